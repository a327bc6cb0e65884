#include "fpsearch/model2d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fpsearch/cheb.hpp"

namespace fpsearch {

namespace {

constexpr double kPi = std::numbers::pi;

// one composite pulse A_zeta = exp(-i (phi/2)(cos zeta X + sin zeta Y))
TwoLevelState apply_pulse(const TwoLevelState& v, double zeta, double phi) {
  const double c = std::cos(phi / 2);
  const double s = std::sin(phi / 2);
  const Complex e_minus = std::polar(1.0, -zeta);
  const Complex e_plus = std::polar(1.0, zeta);
  const Complex off(0.0, -1.0);
  TwoLevelState out;
  out.a_tbar = c * v.a_tbar + off * s * e_minus * v.a_t;
  out.a_t = off * s * e_plus * v.a_tbar + c * v.a_t;
  return out;
}

}  // namespace

SearchParams make_params(double lambda, double delta) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::domain_error("make_params: lambda must lie in [0, 1], got " +
                            std::to_string(lambda));
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error("make_params: delta must lie in [0, 1], got " + std::to_string(delta));
  SearchParams p;
  p.lambda = lambda;
  p.delta = delta;
  p.phi = 2.0 * std::asin(std::sqrt(lambda));
  p.xi = 0.0;
  p.lambda_zero = (lambda == 0.0);
  return p;
}

double TwoLevelState::chi() const {
  if (std::norm(a_t) == 0.0) return 0.0;
  if (std::norm(a_tbar) == 0.0) return std::arg(a_t);
  return normalize_angle(std::arg(a_t) - std::arg(a_tbar));
}

TwoLevelState initial_state(const SearchParams& params) {
  TwoLevelState s;
  s.a_tbar = std::sqrt(1.0 - params.lambda);
  s.a_t = std::sqrt(params.lambda);
  return s;
}

TwoLevelState reflect_s(const TwoLevelState& state, double alpha, const SearchParams& params) {
  const double lam = params.lambda;
  const double lbar = 1.0 - lam;
  const Complex k = 1.0 - std::polar(1.0, -alpha);
  const double cross = std::sqrt(lam * lbar);
  TwoLevelState out;
  out.a_tbar = (1.0 - k * lbar) * state.a_tbar - k * cross * state.a_t;
  out.a_t = -k * cross * state.a_tbar + (1.0 - k * lam) * state.a_t;
  return out;
}

TwoLevelState reflect_t(const TwoLevelState& state, double beta) {
  TwoLevelState out = state;
  out.a_t *= std::polar(1.0, beta);
  return out;
}

TwoLevelState apply_sequence(const PhaseSchedule& schedule, const SearchParams& params) {
  TwoLevelState v = initial_state(params);
  for (int j = 0; j < schedule.l; ++j) {
    v = reflect_t(v, schedule.betas[j]);
    v = reflect_s(v, schedule.alphas[j], params);
    v.a_tbar = -v.a_tbar;
    v.a_t = -v.a_t;
  }
  return v;
}

double success_prob_closed(int L, double delta, double lambda) {
  if (L < 1 || L % 2 == 0)
    throw std::domain_error("success_prob_closed: L must be an odd positive integer");
  if (lambda <= 0.0) return 0.0;
  if (lambda > 1.0) throw std::domain_error("success_prob_closed: lambda must lie in [0, 1]");
  if (delta == 0.0) return 1.0 - std::pow(1.0 - lambda, L);
  const double y = cheb_T_frac(L, 1.0 / delta) * std::sqrt(1.0 - lambda);
  const double t = cheb_T(L, y);
  const double p = 1.0 - delta * delta * t * t;
  return std::min(1.0, std::max(0.0, p));
}

WidthResult width(int L, double delta) {
  if (delta == 0.0) return {1.0, std::numeric_limits<double>::infinity()};
  const double g = gamma_of(delta, L);
  const double approx_root = std::log(2.0 / delta) / L;
  return {1.0 - g * g, approx_root * approx_root};
}

double width_exact(int L, double delta) { return width(L, delta).exact; }

MinQueriesResult min_queries(double delta, double lambda0) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::domain_error("min_queries: delta must lie in (0, 1]");
  if (!(lambda0 > 0.0 && lambda0 <= 1.0))
    throw std::domain_error("min_queries: lambda0 must lie in (0, 1]");
  MinQueriesResult r;
  r.bound = std::log(2.0 / delta) / std::sqrt(lambda0);
  double prev = 1.0;
  for (int L = 1;; L += 2) {
    const double w = width_exact(L, delta);
    if (w <= lambda0) {
      r.L = L;
      r.queries = L - 1;
      r.width_at = w;
      r.width_prev = prev;
      return r;
    }
    prev = w;
  }
}

TwoLevelState pulse_form_state(const PhaseSchedule& schedule, const SearchParams& params) {
  if (schedule.mode != Mode::amplify)
    throw std::invalid_argument("pulse_form_state: defined for amplify schedules only");
  const ZetaSequence zs = zeta_sequence(schedule);
  // a uniform zeta shift only moves the free relative phase chi; the shift
  // that pins the first pulse at pi/2 makes it exactly the preparation of |s>,
  // which is the member of the family equal to the reflection sequence
  const double shift = kPi / 2 - zs.zetas.front();
  TwoLevelState v;  // |0> = |tbar>
  for (double z : zs.zetas) v = apply_pulse(v, z + shift, params.phi);
  return v;
}

RecurrenceResult amplitude_recurrence(const PhaseSchedule& schedule, const SearchParams& params) {
  if (schedule.mode != Mode::amplify)
    throw std::invalid_argument("amplitude_recurrence: defined for amplify schedules only");
  const ZetaSequence zs = zeta_sequence(schedule);
  const double x = std::cos(params.phi / 2);
  const double sx = std::sin(params.phi / 2);
  RecurrenceResult r;
  r.a.reserve(schedule.L + 1);
  r.b.reserve(schedule.L + 1);
  TwoLevelState v;  // (a_0, b_0) = (1, 0)
  r.a.push_back(v.a_tbar);
  r.b.push_back(v.a_t);
  double worst = 0.0;
  for (int h = 1; h <= schedule.L; ++h) {
    const double zeta = zs.zetas[h - 1];
    const Complex a_prev = v.a_tbar;
    v = apply_pulse(v, zeta, params.phi);
    r.a.push_back(v.a_tbar);
    r.b.push_back(v.a_t);
    // decoupling auxiliary: b'_h = -x a_h - i sqrt(1-x^2) e^{-i zeta_h} b_h = -a_{h-1}
    const Complex bprime =
        -x * v.a_tbar - Complex(0.0, 1.0) * sx * std::polar(1.0, -zeta) * v.a_t;
    worst = std::max(worst, std::abs(bprime + a_prev));
  }
  r.max_aux_residual = worst;
  return r;
}

double grover_reference(int l, double lambda) {
  if (l < 0) throw std::domain_error("grover_reference: l must be nonnegative");
  const double s = std::sin((2 * l + 1) * std::asin(std::sqrt(lambda)));
  return s * s;
}

Pi3Result pi3_reference(int k, double lambda) {
  if (k < 0 || k > 39) throw std::domain_error("pi3_reference: k must lie in [0, 39]");
  long long reps = 1;
  for (int i = 0; i < k; ++i) reps *= 3;
  Pi3Result r;
  r.p = 1.0 - std::pow(1.0 - lambda, static_cast<double>(reps));
  r.queries = reps - 1;
  return r;
}

double avoidance_prob(const PhaseSchedule& schedule, const SearchParams& params) {
  if (schedule.mode != Mode::avoid)
    throw std::invalid_argument("avoidance_prob: schedule must be in avoid mode");
  const TwoLevelState v = apply_sequence(schedule, params);
  return std::norm(v.a_tbar);
}

}  // namespace fpsearch
