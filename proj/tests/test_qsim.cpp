#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "fpsearch/model2d.hpp"
#include "fpsearch/qsim.hpp"
#include "fpsearch/schedule.hpp"

using namespace fpsearch;
using Catch::Matchers::WithinAbs;

namespace {

CVec random_state(std::size_t dim, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(dim);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  double nrm = std::sqrt(ref::norm2(v));
  for (auto& x : v) x /= nrm;
  return v;
}

// row-major unitary from Gram-Schmidt on random columns; two passes so the
// orthogonality residual sits at machine precision
CVec random_unitary(std::size_t dim, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<CVec> cols(dim, CVec(dim));
  for (auto& c : cols)
    for (auto& x : c) x = Complex(g(rng), g(rng));
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Complex ip{0.0, 0.0};
        for (std::size_t r = 0; r < dim; ++r) ip += std::conj(cols[j][r]) * cols[i][r];
        for (std::size_t r = 0; r < dim; ++r) cols[i][r] -= ip * cols[j][r];
      }
      double nrm = 0.0;
      for (const auto& x : cols[i]) nrm += std::norm(x);
      nrm = std::sqrt(nrm);
      for (auto& x : cols[i]) x /= nrm;
    }
  CVec m(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m[r * dim + c] = cols[c][r];
  return m;
}

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("preparation") {
  const ProblemInstance inst = make_uniform_instance(3, {5});
  const StateVector sv = prepare(inst);
  REQUIRE(sv.amps.size() == 8);
  for (const Complex& a : sv.amps) CHECK_THAT(std::abs(a - Complex(0.35355339059327373, 0.0)),
                                              WithinAbs(0.0, 1e-16));
  const StateVector sva = prepare(inst, true);
  REQUIRE(sva.amps.size() == 16);
  CHECK(sva.has_ancilla);
  for (std::size_t i = 8; i < 16; ++i) CHECK(sva.amps[i] == Complex(0.0, 0.0));
  CHECK_THAT(ref::norm2(sva.amps), WithinAbs(1.0, 1e-15));
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(make_uniform_instance(0, {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_instance(17, {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_instance(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_instance(3, {8}), std::invalid_argument);
  CHECK_THROWS_AS(make_custom_instance(9, {0}, CVec()), std::invalid_argument);
  CHECK_THROWS_AS(make_custom_instance(1, {0}, CVec(3)), std::invalid_argument);
  const CVec skewed{Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0)};
  CHECK_THROWS_AS(make_custom_instance(1, {0}, skewed), std::invalid_argument);

  // duplicates collapse: lambda counts distinct indices
  const ProblemInstance inst = make_uniform_instance(4, {7, 7, 2});
  CHECK(inst.marked.size() == 2);
  CHECK_THAT(inst.lambda(), WithinAbs(0.125, 1e-16));
}

TEST_CASE("direct reflections match their definitions") {
  std::mt19937 rng(2024);
  const ProblemInstance inst = make_uniform_instance(3, {1, 6});
  const double amp = 1.0 / std::sqrt(8.0);
  for (double angle : {-2.5, -0.3, 0.0, 1.0471975511965976, 3.141592653589793}) {
    const CVec before = random_state(8, rng);

    StateVector svt;
    svt.n = 3;
    svt.amps = before;
    direct_reflect_t(svt, angle, inst.marked);
    for (std::size_t i = 0; i < 8; ++i) {
      const Complex want = (i == 1 || i == 6) ? before[i] * std::polar(1.0, angle) : before[i];
      REQUIRE_THAT(std::abs(svt.amps[i] - want), WithinAbs(0.0, 1e-15));
    }

    StateVector svs;
    svs.n = 3;
    svs.amps = before;
    direct_reflect_s(svs, angle, inst);
    Complex ovl{0.0, 0.0};
    for (const Complex& x : before) ovl += amp * x;
    const Complex k = 1.0 - std::polar(1.0, -angle);
    for (std::size_t i = 0; i < 8; ++i)
      REQUIRE_THAT(std::abs(svs.amps[i] - (before[i] - k * ovl * amp)), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("circuit reflections equal the direct ones up to the tracked phase") {
  std::mt19937 rng(7);
  const ProblemInstance inst = make_uniform_instance(4, {2, 9, 11});
  const CVec reg = random_state(16, rng);

  StateVector direct;
  direct.n = 4;
  direct.amps = reg;
  StateVector circ;
  circ.n = 4;
  circ.has_ancilla = true;
  circ.amps = reg;
  circ.amps.resize(32, Complex(0.0, 0.0));

  SECTION("target reflection carries e^{-i beta/2}") {
    const double beta = 0.9;
    direct_reflect_t(direct, beta, inst.marked);
    circuit_reflect_t(circ, beta, inst.marked);
    const Complex ph = std::polar(1.0, -beta / 2);
    for (std::size_t i = 0; i < 16; ++i)
      REQUIRE_THAT(std::abs(circ.amps[i] - ph * direct.amps[i]), WithinAbs(0.0, 1e-15));
    CHECK(ref::norm2_tail(circ.amps, 16) == 0.0);
  }
  SECTION("source reflection carries e^{+i alpha/2}") {
    const double alpha = -1.3;
    direct_reflect_s(direct, alpha, inst);
    circuit_reflect_s(circ, alpha, inst);
    const Complex ph = std::polar(1.0, alpha / 2);
    for (std::size_t i = 0; i < 16; ++i)
      REQUIRE_THAT(std::abs(circ.amps[i] - ph * direct.amps[i]), WithinAbs(0.0, 1e-13));
    CHECK(ref::norm2_tail(circ.amps, 16) <= 1e-20);
  }
  SECTION("both require the ancilla") {
    CHECK_THROWS_AS(circuit_reflect_t(direct, 0.5, inst.marked), std::logic_error);
    CHECK_THROWS_AS(circuit_reflect_s(direct, 0.5, inst), std::logic_error);
  }
}

TEST_CASE("full runs agree with the two-level closed form") {
  for (int n : {4, 8})
    for (std::size_t m : {std::size_t{1}, std::size_t{5}})
      for (int l : {2, 5}) {
        std::vector<std::uint64_t> marked(m);
        for (std::size_t i = 0; i < m; ++i) marked[i] = 2 * i + 1;
        const ProblemInstance inst = make_uniform_instance(n, marked);
        const double d = std::sqrt(0.1);
        const PhaseSchedule s = fixed_point_phases(l, d);
        const double want = success_prob_closed(s.L, d, inst.lambda());

        const RunResult rd = run(s, inst, Engine::direct);
        REQUIRE(rd.queries == 2 * l);
        REQUIRE_THAT(rd.p_marked, WithinAbs(want, 1e-9));

        const RunResult rc = run(s, inst, Engine::circuit);
        REQUIRE_THAT(rc.p_marked, WithinAbs(want, 1e-9));
        REQUIRE(rc.max_ancilla_leak <= 1e-20);
        REQUIRE(fidelity(register_state(rc.final), register_state(rd.final)) >= 1.0 - 1e-10);
      }
}

TEST_CASE("everything marked stays found") {
  const ProblemInstance inst = make_uniform_instance(2, {0, 1, 2, 3});
  for (int l : {0, 1, 4}) {
    const PhaseSchedule s = fixed_point_phases(l, 0.5);
    CHECK_THAT(run(s, inst, Engine::direct).p_marked, WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("empty schedule just measures the preparation") {
  const ProblemInstance inst = make_uniform_instance(5, {0, 3, 30});
  const RunResult r = run(fixed_point_phases(0, 0.1), inst, Engine::direct);
  CHECK(r.queries == 0);
  CHECK_THAT(r.p_marked, WithinAbs(3.0 / 32.0, 1e-15));
}

TEST_CASE("uniform search only sees the count of marked states") {
  const double d = std::sqrt(0.1);
  const PhaseSchedule s = fixed_point_phases(3, d);
  const ProblemInstance a = make_uniform_instance(6, {3, 17, 40});
  const ProblemInstance b = make_uniform_instance(6, {0, 1, 2});
  const double pa = run(s, a, Engine::direct).p_marked;
  const double pb = run(s, b, Engine::direct).p_marked;
  CHECK_THAT(pa, WithinAbs(pb, 1e-12));
}

TEST_CASE("custom preparation") {
  std::mt19937 rng(99);
  const std::size_t dim = 8;
  const CVec u = random_unitary(dim, rng);
  const ProblemInstance inst = make_custom_instance(3, {1, 5}, u);

  double lam = std::norm(u[1 * dim]) + std::norm(u[5 * dim]);
  CHECK_THAT(inst.lambda(), WithinAbs(lam, 1e-14));

  const double d = std::sqrt(0.1);
  const PhaseSchedule s = fixed_point_phases(4, d);
  const double want = success_prob_closed(s.L, d, inst.lambda());

  const RunResult rd = run(s, inst, Engine::direct);
  CHECK_THAT(rd.p_marked, WithinAbs(want, 1e-9));

  const RunResult rc = run(s, inst, Engine::circuit);
  CHECK_THAT(rc.p_marked, WithinAbs(want, 1e-9));
  CHECK(rc.max_ancilla_leak <= 1e-20);
  CHECK(fidelity(register_state(rc.final), register_state(rd.final)) >= 1.0 - 1e-10);
}

TEST_CASE("statevector dump round trip") {
  const ProblemInstance inst = make_uniform_instance(3, {2});
  const RunResult r = run(fixed_point_phases(2, 0.4), inst, Engine::circuit);
  const auto path = temp_file("fpsearch_qsim_roundtrip.fpqs");
  dump_statevector(r.final, path.string());

  const StateVector back = load_statevector(path.string());
  CHECK(back.n == 3);
  CHECK(back.has_ancilla);
  REQUIRE(back.amps == r.final.amps);

  std::ifstream in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  CHECK(std::string(magic, 4) == "FPQS");
  in.close();
  std::filesystem::remove(path);
}

TEST_CASE("dump loading rejects junk") {
  const auto missing = temp_file("fpsearch_qsim_nonexistent.fpqs");
  std::filesystem::remove(missing);
  CHECK_THROWS_AS(load_statevector(missing.string()), std::runtime_error);

  const auto junk = temp_file("fpsearch_qsim_junk.fpqs");
  {
    std::ofstream out(junk, std::ios::binary);
    out << "this is not a statevector";
  }
  CHECK_THROWS_AS(load_statevector(junk.string()), std::runtime_error);
  std::filesystem::remove(junk);

  const auto cut = temp_file("fpsearch_qsim_truncated.fpqs");
  {
    const ProblemInstance inst = make_uniform_instance(2, {1});
    const StateVector sv = prepare(inst);
    dump_statevector(sv, cut.string());
    std::filesystem::resize_file(cut, 16 + 3 * sizeof(Complex));
  }
  CHECK_THROWS_AS(load_statevector(cut.string()), std::runtime_error);
  std::filesystem::remove(cut);
}

TEST_CASE("engine and fidelity plumbing") {
  CHECK(engine_from_string("direct") == Engine::direct);
  CHECK(engine_from_string("circuit") == Engine::circuit);
  CHECK_THROWS_AS(engine_from_string("warp"), std::invalid_argument);
  CHECK_THROWS_AS(fidelity(CVec(2), CVec(3)), std::invalid_argument);
}

TEST_CASE("parallel kernels reproduce the serial ones") {
  std::mt19937 rng(5150);
  const std::size_t n = (1u << 13) + 3;
  const CVec base = random_state(n, rng);
  std::vector<std::uint64_t> idx{0, 5, 77, 4095, n - 1};

  SECTION("elementwise updates are bitwise identical") {
    const Complex f = std::polar(1.0, 0.37);
    CVec a = base, b = base;
    ref::scale(a, f);
    omp::scale(b, f);
    REQUIRE(a == b);

    a = base, b = base;
    ref::phase_indexed(a, idx, f);
    omp::phase_indexed(b, idx, f);
    REQUIRE(a == b);

    a = base, b = base;
    ref::add_const(a, 1000, Complex(0.25, -0.5));
    omp::add_const(b, 1000, Complex(0.25, -0.5));
    REQUIRE(a == b);

    const CVec dir = random_state(n, rng);
    a = base, b = base;
    ref::axpy(a, Complex(0.1, 0.2), dir);
    omp::axpy(b, Complex(0.1, 0.2), dir);
    REQUIRE(a == b);
  }
  SECTION("pair swaps and half phases") {
    std::mt19937 rng2(11);
    const CVec orig = random_state(2 * n, rng2);
    CVec a = orig, b = orig;
    ref::swap_pairs(a, idx, n);
    omp::swap_pairs(b, idx, n);
    REQUIRE(a == b);
    CHECK(a[idx[2] + n] == orig[idx[2]]);
    CHECK(a[idx[2]] == orig[idx[2] + n]);
    // swapping twice restores the state
    ref::swap_pairs(a, idx, n);
    REQUIRE(a == orig);

    a = b;
    ref::phase_halves(a, n, Complex(0, 1), Complex(0, -1));
    omp::phase_halves(b, n, Complex(0, 1), Complex(0, -1));
    REQUIRE(a == b);
  }
  SECTION("reductions agree to rounding") {
    const CVec other = random_state(n, rng);
    CHECK_THAT(std::abs(ref::sum(base) - omp::sum(base)), WithinAbs(0.0, 1e-13));
    CHECK_THAT(std::abs(ref::dot(base, other) - omp::dot(base, other)), WithinAbs(0.0, 1e-13));
    CHECK_THAT(ref::norm2(base), WithinAbs(omp::norm2(base), 1e-13));
    CHECK_THAT(ref::norm2_tail(base, 1234), WithinAbs(omp::norm2_tail(base, 1234), 1e-13));
    CHECK_THAT(ref::prob_indexed(base, idx), WithinAbs(omp::prob_indexed(base, idx), 1e-15));
  }
  SECTION("hadamard and dense application") {
    CVec a = random_state(1u << 10, rng), b = a;
    ref::hadamard(a, 4);
    omp::hadamard(b, 4);
    REQUIRE(a == b);

    const std::size_t dim = 8;
    const CVec m = random_unitary(dim, rng);
    CVec va = random_state(dim, rng), vb = va;
    ref::dense_apply(m, dim, va);
    omp::dense_apply(m, dim, vb);
    REQUIRE(va == vb);
    CHECK_THAT(ref::norm2(va), WithinAbs(1.0, 1e-12));
  }
}
