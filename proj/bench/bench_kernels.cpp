// Compares the serial reference kernels against the OpenMP versions and times
// a full end-to-end run on the largest register. Build and run:
//   cmake --build build --target fpsearch_bench && ./build/fpsearch_bench
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "fpsearch/kernels.hpp"
#include "fpsearch/qsim.hpp"
#include "fpsearch/schedule.hpp"

using namespace fpsearch;

namespace {

using Clock = std::chrono::steady_clock;

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    f();
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

CVec random_vec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CVec v(n);
  for (auto& a : v) a = {d(rng), d(rng)};
  return v;
}

void row(const char* name, std::size_t n, double ref_s, double omp_s) {
  std::printf("%-14s n=2^%-2d  serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx\n",
              name, static_cast<int>(std::log2(static_cast<double>(n))), ref_s * 1e3,
              omp_s * 1e3, omp_s > 0 ? ref_s / omp_s : 0.0);
}

}  // namespace

int main() {
  constexpr int kReps = 7;
  std::printf("kernel timings, best of %d\n\n", kReps);

  for (int p = 16; p <= 22; p += 3) {
    const std::size_t n = 1ull << p;
    const CVec base = random_vec(n, 12345u + static_cast<unsigned>(p));

    {
      CVec a = base, b = base;
      const double rs = best_of(kReps, [&] { ref::scale(a, {0.3, 0.4}); });
      const double os = best_of(kReps, [&] { omp::scale(b, {0.3, 0.4}); });
      row("scale", n, rs, os);
    }
    {
      CVec a = base, b = base;
      const double rs = best_of(kReps, [&] { ref::hadamard(a, 3); });
      const double os = best_of(kReps, [&] { omp::hadamard(b, 3); });
      row("hadamard", n, rs, os);
    }
    {
      const double rs = best_of(kReps, [&] { (void)ref::norm2(base); });
      const double os = best_of(kReps, [&] { (void)omp::norm2(base); });
      row("norm2", n, rs, os);
    }
    {
      const CVec other = random_vec(n, 999u);
      const double rs = best_of(kReps, [&] { (void)ref::dot(base, other); });
      const double os = best_of(kReps, [&] { (void)omp::dot(base, other); });
      row("dot", n, rs, os);
    }
    {
      CVec a = base, b = base;
      const CVec other = random_vec(n, 7u);
      const double rs = best_of(kReps, [&] { ref::axpy(a, {0.1, -0.2}, other); });
      const double os = best_of(kReps, [&] { omp::axpy(b, {0.1, -0.2}, other); });
      row("axpy", n, rs, os);
    }
    std::printf("\n");
  }

  // end-to-end: largest allowed register, both engines
  const ProblemInstance inst = make_uniform_instance(16, {1, 17, 100, 40000});
  const PhaseSchedule sched = fixed_point_phases(6, std::sqrt(0.1));
  for (Engine e : {Engine::direct, Engine::circuit}) {
    const double rs =
        best_of(3, [&] { (void)run(sched, inst, e, Backend::serial); });
    const double os =
        best_of(3, [&] { (void)run(sched, inst, e, Backend::parallel); });
    std::printf("run n=16 %-8s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx\n",
                e == Engine::direct ? "direct" : "circuit", rs * 1e3, os * 1e3,
                os > 0 ? rs / os : 0.0);
  }
  return 0;
}
