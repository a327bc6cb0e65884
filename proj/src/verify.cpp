#include "fpsearch/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fpsearch/cheb.hpp"
#include "fpsearch/model2d.hpp"
#include "fpsearch/qsim.hpp"
#include "fpsearch/schedule.hpp"
#include "fpsearch/verify_config.hpp"

namespace fpsearch {
namespace {

namespace cfg = verifycfg;

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// log-spaced grid in (kLambdaMin, 1], ascending; the left end is open so the
// first point sits one log-step above kLambdaMin
std::vector<double> lambda_grid(int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i)
    g[static_cast<std::size_t>(i - 1)] =
        std::exp(std::log(cfg::kLambdaMin) * (1.0 - static_cast<double>(i) / points));
  g.back() = 1.0;
  return g;
}

template <class F>
SuiteResult run_suite(int criterion, const char* name, F&& body) {
  SuiteResult r;
  r.criterion = criterion;
  r.name = name;
  r.pass = true;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

double two_level_fidelity(const TwoLevelState& a, const TwoLevelState& b) {
  return std::abs(std::conj(a.a_tbar) * b.a_tbar + std::conj(a.a_t) * b.a_t);
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
  const bool full = opt.full;
  const int points = full ? cfg::kLambdaPoints : cfg::kLambdaPointsQuick;
  const std::vector<double> grid = lambda_grid(points);
  std::vector<SuiteResult> out;

  // 1: simulated sequence vs closed form, over the full (l, delta, lambda) grid
  out.push_back(run_suite(1, "closed-form equivalence", [&](SuiteResult& r) {
    const int lmax = full ? cfg::kEquivLMax : cfg::kEquivLMaxQuick;
    double worst = 0.0;
    long n = 0;
    for (int l = 1; l <= lmax; ++l) {
      for (double d2 : cfg::kDeltaSqGrid) {
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(d2));
        for (double lam : grid) {
          const double p = apply_sequence(s, make_params(lam, s.delta)).p_target();
          const double c = success_prob_closed(s.L, s.delta, lam);
          worst = std::max(worst, std::abs(p - c));
          ++n;
        }
      }
    }
    r.pass = worst <= cfg::kTolEquiv;
    r.detail = fmt("max |P_sim - P_closed| = %.3e over %ld points (tol %.0e)", worst, n,
                   cfg::kTolEquiv);
  }));

  // 2: above the width threshold the success probability never drops below
  // 1 - delta^2
  out.push_back(run_suite(2, "fixed-point success floor", [&](SuiteResult& r) {
    const int lmax = full ? cfg::kEquivLMax : cfg::kEquivLMaxQuick;
    double worst_margin = 1.0;
    long n = 0;
    for (int l = 1; l <= lmax; ++l) {
      for (double d2 : cfg::kDeltaSqGrid) {
        if (d2 <= 0.0) continue;
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(d2));
        const double w = width_exact(s.L, s.delta);
        const double floor_p = 1.0 - d2 - cfg::kBoundSlack;
        for (double lam : grid) {
          if (lam < w) continue;
          const double p = apply_sequence(s, make_params(lam, s.delta)).p_target();
          worst_margin = std::min(worst_margin, p - floor_p);
          ++n;
        }
      }
    }
    r.pass = worst_margin >= 0.0;
    r.detail = fmt("min (P_sim - (1 - delta^2 - %.0e)) = %.3e over %ld points in region",
                   cfg::kBoundSlack, worst_margin, n);
  }));

  // 3: longer sequences never widen the converged region
  out.push_back(run_suite(3, "width monotonicity", [&](SuiteResult& r) {
    const int lmax = full ? cfg::kWidthLMax : cfg::kWidthLMaxQuick;
    double worst_increase = -1.0;
    for (double d2 : cfg::kWidthDeltaSq) {
      const double delta = std::sqrt(d2);
      for (int L = 1; L <= lmax; L += 2) {
        const double w1 = width_exact(L, delta);
        const double w2 = width_exact(L + 2, delta);
        worst_increase = std::max(worst_increase, w2 - w1);
      }
    }
    r.pass = worst_increase <= 0.0;
    r.detail = fmt("max (width(L+2) - width(L)) = %.3e for odd L <= %d", worst_increase, lmax);
  }));

  // 4: delta = 1 collapses every phase to pi, the standard Grover rotation
  out.push_back(run_suite(4, "Grover limit", [&](SuiteResult& r) {
    const int lmax = full ? cfg::kGroverLMax : cfg::kEquivLMaxQuick;
    double worst = 0.0;
    for (int l = 1; l <= lmax; ++l) {
      const PhaseSchedule s = fixed_point_phases(l, 1.0);
      for (double lam : grid) {
        const double p = apply_sequence(s, make_params(lam, 1.0)).p_target();
        worst = std::max(worst, std::abs(p - grover_reference(l, lam)));
      }
    }
    r.pass = worst <= cfg::kTolGrover;
    r.detail = fmt("max |P_sim - sin^2((2l+1) asin sqrt(lambda))| = %.3e (tol %.0e)", worst,
                   cfg::kTolGrover);
  }));

  // 5: k-fold self-nesting of the shortest delta = 0 schedule reproduces the
  // pi/3 protocol exactly
  out.push_back(run_suite(5, "pi/3 limit", [&](SuiteResult& r) {
    double worst = 0.0;
    bool sizes_ok = true;
    for (int k = 1; k <= cfg::kPi3KMax; ++k) {
      const PhaseSchedule s = nest_many(std::vector<int>(static_cast<std::size_t>(k), 1), 0.0);
      long long expect_L = 1;
      for (int i = 0; i < k; ++i) expect_L *= 3;
      sizes_ok = sizes_ok && (s.L == expect_L);
      for (double lam : grid) {
        const double p = apply_sequence(s, make_params(lam, 0.0)).p_target();
        worst = std::max(worst, std::abs(p - pi3_reference(k, lam).p));
      }
    }
    r.pass = sizes_ok && worst <= cfg::kTolPi3;
    r.detail = fmt("max |P_sim - (1 - (1-lambda)^(3^k))| = %.3e for k <= %d%s", worst,
                   cfg::kPi3KMax, sizes_ok ? "" : "; sequence length mismatch");
  }));

  // 6: query counts at the two reference operating points
  out.push_back(run_suite(6, "reference operating points", [&](SuiteResult& r) {
    const double delta = std::sqrt(cfg::kPointDeltaSq);
    const MinQueriesResult a = min_queries(delta, cfg::kPointLambdaA);
    const bool ok_a = a.queries == cfg::kPointQueriesA;

    auto pi3_first = [](double lam0, double threshold) {
      for (int k = 0;; ++k) {
        const Pi3Result p = pi3_reference(k, lam0);
        if (p.p >= threshold) return p.queries;
      }
    };
    const long long pa = pi3_first(cfg::kPointLambdaA, cfg::kPointThreshold);
    const long long pb = pi3_first(cfg::kPointLambdaB, cfg::kPointThreshold);

    const MinQueriesResult b = min_queries(delta, cfg::kPointLambdaB);
    const bool bracket_ok =
        b.width_at <= cfg::kPointLambdaB && cfg::kPointLambdaB < b.width_prev;

    r.pass = ok_a && pa == cfg::kPointPi3QueriesA && pb == cfg::kPointPi3QueriesB &&
             bracket_ok && a.queries < pa && b.queries < pb;
    r.detail = fmt("lambda0=%.2f: %d queries (L=%d), pi/3 reaches %.1f at %lld; "
                   "lambda0=%.2f: computed minimum %d queries (L=%d, width %.4e <= lambda0 < %.4e), "
                   "pi/3 at %lld",
                   cfg::kPointLambdaA, a.queries, a.L, cfg::kPointThreshold, pa,
                   cfg::kPointLambdaB, b.queries, b.L, b.width_at, b.width_prev, pb);
  }));

  // 7: nested schedules obey the composed closed form
  out.push_back(run_suite(7, "nesting composition", [&](SuiteResult& r) {
    double worst = 0.0;
    for (int l1 = 1; l1 <= cfg::kNestLMax; ++l1) {
      for (int l2 = 1; l2 <= cfg::kNestLMax; ++l2) {
        for (double d2 : cfg::kNestDeltaSq) {
          const PhaseSchedule s = nest(l1, l2, std::sqrt(d2));
          for (double lam : grid) {
            const double p = apply_sequence(s, make_params(lam, s.delta)).p_target();
            const double c = success_prob_closed(s.L, s.delta, lam);
            worst = std::max(worst, std::abs(p - c));
          }
        }
      }
    }
    r.pass = worst <= cfg::kTolNest;
    r.detail = fmt("max |P_sim - P_closed(L1*L2)| = %.3e over (l1,l2) <= (%d,%d) (tol %.0e)",
                   worst, cfg::kNestLMax, cfg::kNestLMax, cfg::kTolNest);
  }));

  // 8: full statevector engines vs the two-level model
  out.push_back(run_suite(8, "statevector engines", [&](SuiteResult& r) {
    const int n = full ? cfg::kSvQubits : cfg::kSvQubitsQuick;
    std::vector<std::size_t> counts;
    if (full)
      counts.assign(std::begin(cfg::kSvMarked), std::end(cfg::kSvMarked));
    else
      counts.assign(std::begin(cfg::kSvMarkedQuick), std::end(cfg::kSvMarkedQuick));

    double worst_p = 0.0, worst_fid = 0.0, worst_leak = 0.0;
    for (std::size_t m : counts) {
      std::vector<std::uint64_t> marked(m);
      std::iota(marked.begin(), marked.end(), 0);
      const ProblemInstance inst = make_uniform_instance(n, marked);
      for (int l : cfg::kSvL) {
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(cfg::kSvDeltaSq));
        const RunResult direct = run(s, inst, Engine::direct, opt.backend);
        const double p2d =
            apply_sequence(s, make_params(inst.lambda(), s.delta)).p_target();
        worst_p = std::max(worst_p, std::abs(direct.p_marked - p2d));

        const RunResult circuit = run(s, inst, Engine::circuit, opt.backend);
        const double fid = fidelity(register_state(circuit.final), direct.final.amps);
        worst_fid = std::max(worst_fid, 1.0 - fid);
        worst_leak = std::max(worst_leak, circuit.max_ancilla_leak);
      }
    }
    r.pass = worst_p <= cfg::kTolSv && worst_fid <= cfg::kTolFidelity &&
             worst_leak <= cfg::kTolLeak;
    r.detail = fmt("n=%d: max |P_sv - P_2d| = %.3e, max fidelity deficit = %.3e, "
                   "max ancilla leak = %.3e",
                   n, worst_p, worst_fid, worst_leak);
  }));

  // 9: the product-of-pulses form prepares the same state as the reflection
  // sequence, up to global phase
  out.push_back(run_suite(9, "pulse-product form", [&](SuiteResult& r) {
    const int lmax = full ? cfg::kPulseLMax : std::min(cfg::kPulseLMax, 5);
    double worst = 0.0;
    for (int l = 1; l <= lmax; ++l) {
      for (double d2 : cfg::kDeltaSqGrid) {
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(d2));
        for (double lam : grid) {
          const SearchParams params = make_params(lam, s.delta);
          const double fid = two_level_fidelity(apply_sequence(s, params),
                                                pulse_form_state(s, params));
          worst = std::max(worst, 1.0 - fid);
        }
      }
    }
    r.pass = worst <= cfg::kTolPulse;
    r.detail = fmt("max fidelity deficit = %.3e for l <= %d (tol %.0e)", worst, lmax,
                   cfg::kTolPulse);
  }));

  // 10: decoupled amplitude recurrence matches the Chebyshev ratio
  out.push_back(run_suite(10, "generalized Chebyshev identity", [&](SuiteResult& r) {
    double worst = 0.0;
    for (int l = 1; l <= cfg::kGenChebLMax; ++l) {
      const int L = 2 * l + 1;
      for (double g : cfg::kGenChebGammas) {
        const double denom = cheb_T(L, 1.0 / g);
        for (int i = 0; i < cfg::kGenChebXPoints; ++i) {
          const double x = static_cast<double>(i) / (cfg::kGenChebXPoints - 1);
          const double lhs = std::abs(gen_cheb_a(L, g, x));
          const double rhs = std::abs(cheb_T(L, x / g)) / denom;
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
    }
    r.pass = worst <= cfg::kTolGenCheb;
    r.detail = fmt("max | |a_L| - |T_L(x/gamma)|/T_L(1/gamma) | = %.3e (tol %.0e)", worst,
                   cfg::kTolGenCheb);
  }));

  // 11: avoid-mode sequences amplify the orthogonal component under the same
  // closed-form law, evaluated at that component's overlap (1 - lambda)
  out.push_back(run_suite(11, "avoidance mode", [&](SuiteResult& r) {
    double worst = 0.0;
    for (int l = 1; l <= cfg::kAvoidLMax; ++l) {
      for (double d2 : cfg::kDeltaSqGrid) {
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(d2), Mode::avoid);
        for (double lam : grid) {
          const double p = avoidance_prob(s, make_params(lam, s.delta));
          const double c = success_prob_closed(s.L, s.delta, 1.0 - lam);
          worst = std::max(worst, std::abs(p - c));
        }
      }
    }
    r.pass = worst <= cfg::kTolAvoid;
    r.detail = fmt("max | |a_tbar|^2 - P_closed(L, delta, 1-lambda) | = %.3e (tol %.0e)",
                   worst, cfg::kTolAvoid);
  }));

  // 12: least-squares fit of the minimal query count to c / sqrt(lambda0)
  out.push_back(run_suite(12, "query scaling fit", [&](SuiteResult& r) {
    const double delta = std::sqrt(cfg::kScaleDeltaSq);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < cfg::kScalePoints; ++i) {
      const double t = static_cast<double>(i) / (cfg::kScalePoints - 1);
      const double lam0 = std::exp(std::log(cfg::kScaleLambda0Min) +
                                   t * (std::log(cfg::kScaleLambda0Max) -
                                        std::log(cfg::kScaleLambda0Min)));
      const double q = static_cast<double>(min_queries(delta, lam0).queries);
      const double u = 1.0 / std::sqrt(lam0);
      num += q * u;
      den += u * u;
    }
    const double c = num / den;
    const double ref = std::log(2.0 / delta);
    r.pass = c >= cfg::kScaleBandLo * ref && c <= cfg::kScaleBandHi * ref;
    r.detail = fmt("fit c = %.4f, allowed [%.4f, %.4f]", c, cfg::kScaleBandLo * ref,
                   cfg::kScaleBandHi * ref);
  }));

  // extra invariant suites beyond the numbered criteria

  out.push_back(run_suite(0, "Chebyshev invariants", [&](SuiteResult& r) {
    // semigroup T_p(T_q(x)) = T_pq(x); error scaled by the magnitude of the
    // exact value since T_81(2) ~ 1e46 puts absolute comparison past double
    // resolution
    double worst_semi = 0.0;
    for (int p = 1; p <= 9; ++p)
      for (int q = 1; q <= 9; ++q)
        for (int i = 0; i <= 80; ++i) {
          const double x = -2.0 + 4.0 * i / 80.0;
          const double expect = cheb_T(p * q, x);
          const double err = std::abs(cheb_T(p, cheb_T(q, x)) - expect);
          worst_semi = std::max(worst_semi, err / std::max(1.0, std::abs(expect)));
        }

    double worst_inv = 0.0;
    for (int L : {1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21}) {
      for (int i = 0; i <= 200; ++i) {
        const double x = std::pow(10.0, 6.0 * i / 200.0);
        const double err = std::abs(cheb_T(L, cheb_T_frac(L, x)) - x);
        worst_inv = std::max(worst_inv, err / x);
      }
    }

    double worst_bound = 0.0;
    for (int n = 0; n <= 64; ++n)
      for (int i = 0; i <= 200; ++i) {
        const double x = -1.0 + 2.0 * i / 200.0;
        worst_bound = std::max(worst_bound, std::abs(cheb_T(n, x)) - 1.0);
      }

    double worst_rec = 0.0;
    for (int i = 0; i <= 60; ++i) {
      const double x = -1.5 + 3.0 * i / 60.0;
      double tm = 1.0, tc = x;
      for (int n = 2; n <= 32; ++n) {
        const double tn = 2.0 * x * tc - tm;
        tm = tc;
        tc = tn;
        const double expect = cheb_T(n, x);
        worst_rec = std::max(worst_rec, std::abs(tn - expect) /
                                            std::max(1.0, std::abs(expect)));
      }
    }

    r.pass = worst_semi <= cfg::kTolSemigroup && worst_inv <= cfg::kTolFracInverse &&
             worst_bound <= 1e-12 && worst_rec <= 1e-9;
    r.detail = fmt("semigroup %.2e, fractional inverse %.2e, boundedness excess %.2e, "
                   "recurrence %.2e (scaled errors)",
                   worst_semi, worst_inv, worst_bound, worst_rec);
  }));

  out.push_back(run_suite(0, "schedule invariants", [&](SuiteResult& r) {
    bool ok = true;
    std::string why;
    auto check_matching = [&](const PhaseSchedule& s, const char* label) {
      const double sign = s.mode == Mode::amplify ? -1.0 : 1.0;
      for (int j = 1; j <= s.l && ok; ++j) {
        const double b = s.betas[static_cast<std::size_t>(s.l - j)];
        const double a = s.alphas[static_cast<std::size_t>(j - 1)];
        if (!angles_equal(b, sign * a)) {
          ok = false;
          why = fmt("%s: beta[%d] != %+.0f*alpha[%d]", label, s.l - j + 1,
                    sign, j);
        }
      }
      for (double v : s.alphas)
        if (!(v > -kPi - 1e-12 && v <= kPi + 1e-12)) { ok = false; why = "alpha range"; }
      for (double v : s.betas)
        if (!(v > -kPi - 1e-12 && v <= kPi + 1e-12)) { ok = false; why = "beta range"; }
    };

    for (int l = 1; l <= 8 && ok; ++l)
      for (double d2 : cfg::kDeltaSqGrid) {
        check_matching(fixed_point_phases(l, std::sqrt(d2)), "amplify");
        check_matching(fixed_point_phases(l, std::sqrt(d2), Mode::avoid), "avoid");
      }
    if (ok) check_matching(nest(2, 3, std::sqrt(0.1)), "nested");
    if (ok) check_matching(nest(2, 3, std::sqrt(0.1), Mode::avoid), "nested avoid");

    // palindromic pulse phases with the fixed center value
    double worst_pal = 0.0, worst_anchor = 0.0;
    for (int l = 1; l <= 8; ++l)
      for (double d2 : cfg::kDeltaSqGrid) {
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(d2));
        const ZetaSequence z = zeta_sequence(s);
        for (int k = 0; k < s.L; ++k) {
          const double d = std::abs(
              normalize_angle(z.zetas[static_cast<std::size_t>(k)] -
                              z.zetas[static_cast<std::size_t>(s.L - 1 - k)]));
          worst_pal = std::max(worst_pal, d);
        }
        const double anchor = (l % 2 == 0) ? kPi / 2 : -kPi / 2;
        worst_anchor = std::max(
            worst_anchor,
            std::abs(normalize_angle(z.zetas[static_cast<std::size_t>(s.l)] - anchor)));
      }
    if (worst_pal > 1e-12) { ok = false; why = fmt("palindrome error %.2e", worst_pal); }
    if (worst_anchor > 1e-12) { ok = false; why = fmt("anchor error %.2e", worst_anchor); }

    // composing schedules keeps the inner schedule as the leading block
    if (ok) {
      for (int l1 = 1; l1 <= 3 && ok; ++l1)
        for (int l2 = 1; l2 <= 3 && ok; ++l2)
          for (double d2 : cfg::kNestDeltaSq) {
            const double delta = std::sqrt(d2);
            const int L2 = 2 * l2 + 1;
            const double d1 = 1.0 / cheb_T_frac(L2, 1.0 / delta);
            const PhaseSchedule inner = fixed_point_phases(l1, d1);
            const PhaseSchedule comp = nest(l1, l2, delta);
            for (int j = 0; j < l1; ++j) {
              if (!angles_equal(comp.alphas[static_cast<std::size_t>(j)],
                                inner.alphas[static_cast<std::size_t>(j)]) ||
                  !angles_equal(comp.betas[static_cast<std::size_t>(j)],
                                inner.betas[static_cast<std::size_t>(j)])) {
                ok = false;
                why = fmt("prefix mismatch at nest(%d,%d)", l1, l2);
              }
            }
          }
    }

    r.pass = ok;
    r.detail = ok ? fmt("matching, range, palindrome (%.2e), anchor (%.2e), prefix all hold",
                        worst_pal, worst_anchor)
                  : why;
  }));

  out.push_back(run_suite(0, "amplitude recurrence identity", [&](SuiteResult& r) {
    double worst_p = 0.0, worst_aux = 0.0;
    const std::vector<double> sub = lambda_grid(cfg::kLambdaPointsQuick);
    for (int l = 1; l <= 8; ++l)
      for (double d2 : cfg::kDeltaSqGrid) {
        const PhaseSchedule s = fixed_point_phases(l, std::sqrt(d2));
        for (double lam : sub) {
          const RecurrenceResult rec = amplitude_recurrence(s, make_params(lam, s.delta));
          const double p = 1.0 - std::norm(rec.a.back());
          worst_p = std::max(worst_p,
                             std::abs(p - success_prob_closed(s.L, s.delta, lam)));
          worst_aux = std::max(worst_aux, rec.max_aux_residual);
        }
      }
    r.pass = worst_p <= cfg::kTolRecurrence && worst_aux <= cfg::kTolAux;
    r.detail = fmt("max |(1 - |a_L|^2) - P_closed| = %.3e, max auxiliary residual = %.3e",
                   worst_p, worst_aux);
  }));

  out.push_back(run_suite(0, "norm preservation", [&](SuiteResult& r) {
    const int reflections = full ? cfg::kNormReflections : cfg::kNormReflectionsQuick;
    const PhaseSchedule s = fixed_point_phases(reflections / 2, std::sqrt(0.1));
    double worst = 0.0;
    for (double lam : {1e-3, 0.3, 0.999}) {
      const TwoLevelState st = apply_sequence(s, make_params(lam, s.delta));
      worst = std::max(worst, std::abs(st.norm2() - 1.0));
    }
    // statevector norms after a long run, both engines
    const ProblemInstance inst = make_uniform_instance(8, {1, 2, 3});
    const PhaseSchedule s2 = fixed_point_phases(full ? 64 : 16, std::sqrt(0.1));
    for (Engine e : {Engine::direct, Engine::circuit}) {
      const RunResult rr = run(s2, inst, e, opt.backend);
      double n2 = 0.0;
      for (const auto& a : rr.final.amps) n2 += std::norm(a);
      worst = std::max(worst, std::abs(n2 - 1.0));
    }
    r.pass = worst <= cfg::kTolNorm;
    r.detail = fmt("max |norm^2 - 1| = %.3e after %d reflections (tol %.0e)", worst,
                   reflections, cfg::kTolNorm);
  }));

  return out;
}

bool all_pass(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.pass; });
}

}  // namespace fpsearch
