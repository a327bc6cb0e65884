#include <cmath>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "fpsearch/cheb.hpp"
#include "fpsearch/model2d.hpp"
#include "fpsearch/schedule.hpp"

using namespace fpsearch;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("angle normalization keeps (-pi, pi]") {
  CHECK(normalize_angle(kPi) == kPi);
  CHECK(normalize_angle(-kPi) == kPi);
  CHECK_THAT(normalize_angle(3.0 * kPi), WithinAbs(kPi, 1e-12));
  CHECK_THAT(normalize_angle(-0.25), WithinAbs(-0.25, 0.0));
  CHECK(angles_equal(kPi, -kPi));
  CHECK_FALSE(angles_equal(0.1, -0.1));
}

TEST_CASE("shortest schedules") {
  SECTION("l = 1, delta = 0 gives the pi/3 pair") {
    const PhaseSchedule s = fixed_point_phases(1, 0.0);
    REQUIRE(s.l == 1);
    REQUIRE(s.L == 3);
    CHECK_THAT(s.alphas[0], WithinAbs(-kPi / 3, 1e-12));
    CHECK_THAT(s.betas[0], WithinAbs(kPi / 3, 1e-12));
  }
  SECTION("delta = 1 collapses to pi phases") {
    const PhaseSchedule s = fixed_point_phases(3, 1.0);
    for (double a : s.alphas) CHECK(angles_equal(a, kPi));
    for (double b : s.betas) CHECK(angles_equal(b, kPi));
    CHECK(s.gamma == 1.0);
  }
  SECTION("l = 0 is the empty sequence") {
    const PhaseSchedule s = fixed_point_phases(0, 0.5);
    CHECK(s.L == 1);
    CHECK(s.alphas.empty());
    CHECK(s.betas.empty());
  }
}

TEST_CASE("reference phase values") {
  const PhaseSchedule s = fixed_point_phases(2, 0.316228);
  CHECK_THAT(s.alphas[0], WithinAbs(1.5009096885946676, 1e-12));
  CHECK_THAT(s.alphas[1], WithinAbs(-2.6456716862063199, 1e-12));
  CHECK_THAT(s.betas[0], WithinAbs(2.6456716862063199, 1e-12));
  CHECK_THAT(s.betas[1], WithinAbs(-1.5009096885946676, 1e-12));
}

TEST_CASE("phases satisfy their defining equation") {
  // cot(alpha_j / 2) must reproduce tan(2 pi j / L) * sqrt(1 - gamma^2)
  for (int l : {1, 2, 3, 5, 8})
    for (double d : {0.0, 0.1, 0.31622776601683794, 0.7, 1.0}) {
      const PhaseSchedule s = fixed_point_phases(l, d);
      const double sig = std::sqrt(1.0 - s.gamma * s.gamma);
      for (int j = 1; j <= l; ++j) {
        const double a = s.alphas[static_cast<std::size_t>(j - 1)];
        const double expect = std::tan(2.0 * kPi * j / s.L) * sig;
        const double got = std::cos(a / 2) / std::sin(a / 2);
        REQUIRE_THAT(got, WithinAbs(expect, 1e-9 * std::max(1.0, std::abs(expect))));
      }
    }
}

TEST_CASE("mode flips the beta signs only") {
  const PhaseSchedule amp = fixed_point_phases(4, 0.4);
  const PhaseSchedule avd = fixed_point_phases(4, 0.4, Mode::avoid);
  for (int j = 0; j < 4; ++j) {
    CHECK(amp.alphas[static_cast<std::size_t>(j)] == avd.alphas[static_cast<std::size_t>(j)]);
    CHECK(angles_equal(avd.betas[static_cast<std::size_t>(j)],
                       -amp.betas[static_cast<std::size_t>(j)]));
  }
}

TEST_CASE("pulse phases") {
  SECTION("reference list for l = 2") {
    const ZetaSequence z = zeta_sequence(fixed_point_phases(2, 0.316228));
    const double expect[] = {-0.5658076055837018, -0.069886638200229445,
                             1.5707963267948966, -0.069886638200229889,
                             -0.56580760558370358};
    REQUIRE(z.zetas.size() == 5);
    for (int i = 0; i < 5; ++i)
      CHECK_THAT(z.zetas[static_cast<std::size_t>(i)], WithinAbs(expect[i], 1e-12));
  }
  SECTION("palindrome, anchor, and step law") {
    for (int l : {1, 2, 3, 6})
      for (double d : {0.0, 0.2, 0.9, 1.0}) {
        const PhaseSchedule s = fixed_point_phases(l, d);
        const ZetaSequence z = zeta_sequence(s);
        REQUIRE(static_cast<int>(z.zetas.size()) == s.L);
        for (int k = 0; k < s.L; ++k)
          CHECK(angles_equal(z.zetas[static_cast<std::size_t>(k)],
                             z.zetas[static_cast<std::size_t>(s.L - 1 - k)], 1e-11));
        CHECK(angles_equal(z.zetas[static_cast<std::size_t>(l)],
                           (l % 2 == 0 ? 1.0 : -1.0) * kPi / 2));
        const double sig = std::sqrt(1.0 - s.gamma * s.gamma);
        for (int k = 1; k < s.L; ++k) {
          const double step = z.zetas[static_cast<std::size_t>(k)] -
                              z.zetas[static_cast<std::size_t>(k - 1)];
          const double expect =
              (k % 2 == 0 ? 1.0 : -1.0) * kPi - 2.0 * acot(std::tan(kPi * k / s.L) * sig);
          CHECK(angles_equal(normalize_angle(step), normalize_angle(expect), 1e-10));
        }
      }
  }
  SECTION("avoid schedules have no pulse form") {
    REQUIRE_THROWS_AS(zeta_sequence(fixed_point_phases(2, 0.5, Mode::avoid)),
                      std::invalid_argument);
  }
}

TEST_CASE("nesting") {
  SECTION("two shortest delta = 0 components") {
    const PhaseSchedule s = nest(1, 1, 0.0);
    REQUIRE(s.l == 4);
    REQUIRE(s.L == 9);
    const double t = kPi / 3;
    const double ea[] = {-t, t, -t, -t};
    const double eb[] = {t, t, -t, t};
    for (int j = 0; j < 4; ++j) {
      CHECK_THAT(s.alphas[static_cast<std::size_t>(j)], WithinAbs(ea[j], 1e-12));
      CHECK_THAT(s.betas[static_cast<std::size_t>(j)], WithinAbs(eb[j], 1e-12));
    }
  }
  SECTION("delta = 1 components stay Grover") {
    const PhaseSchedule s = nest(2, 3, 1.0);
    REQUIRE(s.L == 5 * 7);
    for (double a : s.alphas) CHECK(angles_equal(a, kPi));
    for (double b : s.betas) CHECK(angles_equal(b, kPi));
  }
  SECTION("modular assignment law") {
    const double delta = 0.4;
    const int l1 = 2, l2 = 3;
    const int L1 = 2 * l1 + 1, L2 = 2 * l2 + 1;
    const double d1 = 1.0 / cheb_T_frac(L2, 1.0 / delta);
    const PhaseSchedule inner = fixed_point_phases(l1, d1);
    const PhaseSchedule outer = fixed_point_phases(l2, delta);
    const PhaseSchedule comp = nest(l1, l2, delta);
    REQUIRE(comp.l == l1 + 2 * l1 * l2 + l2);
    for (int j = 1; j <= comp.l; ++j) {
      const int r = j % L1;
      double expect;
      if (r == 0)
        expect = outer.alphas[static_cast<std::size_t>(j / L1 - 1)];
      else if (r <= l1)
        expect = inner.alphas[static_cast<std::size_t>(r - 1)];
      else
        expect = -inner.alphas[static_cast<std::size_t>(L1 - r - 1)];
      REQUIRE(angles_equal(comp.alphas[static_cast<std::size_t>(j - 1)], expect));
    }
  }
  SECTION("composite sequence obeys the composed closed form") {
    const double delta = 0.316228;
    const PhaseSchedule s = nest(1, 2, delta);
    REQUIRE(s.L == 15);
    for (double lam : {0.02, 0.1, 0.33, 0.8, 1.0}) {
      const double p = apply_sequence(s, make_params(lam, delta)).p_target();
      REQUIRE_THAT(p, WithinAbs(success_prob_closed(15, delta, lam), 1e-9));
    }
  }
  SECTION("component order does not change the guarantee") {
    const double delta = std::sqrt(0.1);
    const PhaseSchedule ab = nest(2, 3, delta);
    const PhaseSchedule ba = nest(3, 2, delta);
    REQUIRE(ab.L == ba.L);
    for (double lam : {0.05, 0.4, 0.95}) {
      const double pa = apply_sequence(ab, make_params(lam, delta)).p_target();
      const double pb = apply_sequence(ba, make_params(lam, delta)).p_target();
      CHECK_THAT(pa, WithinAbs(pb, 2e-9));
    }
  }
  SECTION("three-fold self nest matches one flat nest of the pair") {
    const PhaseSchedule m = nest_many({1, 1, 1}, 0.0);
    REQUIRE(m.L == 27);
    for (double lam : {0.01, 0.2, 0.7}) {
      const double p = apply_sequence(m, make_params(lam, 0.0)).p_target();
      REQUIRE_THAT(p, WithinAbs(1.0 - std::pow(1.0 - lam, 27.0), 1e-10));
    }
  }
  SECTION("bad component counts") {
    REQUIRE_THROWS_AS(nest(0, 2, 0.1), std::domain_error);
    REQUIRE_THROWS_AS(nest_many({}, 0.1), std::domain_error);
  }
}

TEST_CASE("json round trip") {
  const PhaseSchedule s = fixed_point_phases(3, 0.25, Mode::avoid);
  nlohmann::json j = s;
  CHECK(j.contains("l"));
  CHECK(j.contains("L"));
  CHECK(j.contains("delta"));
  CHECK(j.contains("mode"));
  CHECK(j.contains("alphas"));
  CHECK(j.contains("betas"));
  // through text so the serialized representation itself round-trips
  const PhaseSchedule back = nlohmann::json::parse(j.dump()).get<PhaseSchedule>();
  CHECK(back.l == s.l);
  CHECK(back.L == s.L);
  CHECK(back.delta == s.delta);
  CHECK(back.gamma == s.gamma);
  CHECK(back.mode == s.mode);
  CHECK(back.alphas == s.alphas);
  CHECK(back.betas == s.betas);

  nlohmann::json bad = j;
  bad["alphas"] = std::vector<double>{1.0};
  REQUIRE_THROWS_AS(bad.get<PhaseSchedule>(), std::invalid_argument);
}
