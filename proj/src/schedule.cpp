#include "fpsearch/schedule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fpsearch/cheb.hpp"

namespace fpsearch {

namespace {

constexpr double kPi = std::numbers::pi;

// error bound assigned to the inner component of one nesting step
double component_delta(double total_delta, int outer_L) {
  if (total_delta == 0.0) return 0.0;
  return 1.0 / cheb_T_frac(outer_L, 1.0 / total_delta);
}

std::vector<double> matched_betas(const std::vector<double>& alphas, Mode mode) {
  const int l = static_cast<int>(alphas.size());
  std::vector<double> betas(l);
  for (int j = 1; j <= l; ++j) {
    const double b = (mode == Mode::amplify) ? -alphas[j - 1] : alphas[j - 1];
    betas[l - j] = normalize_angle(b);  // beta_{l-j+1}
  }
  return betas;
}

void require_delta(double delta, const char* who) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error(std::string(who) + ": delta must lie in [0, 1], got " +
                            std::to_string(delta));
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::amplify ? "amplify" : "avoid"; }

Mode mode_from_string(const std::string& s) {
  if (s == "amplify") return Mode::amplify;
  if (s == "avoid") return Mode::avoid;
  throw std::invalid_argument("unknown mode '" + s + "' (expected amplify or avoid)");
}

double normalize_angle(double t) {
  double r = std::remainder(t, 2.0 * kPi);  // lands in [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

bool angles_equal(double a, double b, double tol) {
  const double d = std::abs(normalize_angle(a - b));
  return d <= tol || std::abs(d - 2.0 * kPi) <= tol;
}

PhaseSchedule fixed_point_phases(int l, double delta, Mode mode) {
  if (l < 0) throw std::domain_error("fixed_point_phases: l must be nonnegative");
  require_delta(delta, "fixed_point_phases");
  PhaseSchedule s;
  s.l = l;
  s.L = 2 * l + 1;
  s.delta = delta;
  s.gamma = gamma_of(delta, s.L);
  s.mode = mode;
  const double root = std::sqrt(std::max(0.0, 1.0 - s.gamma * s.gamma));
  s.alphas.resize(l);
  for (int j = 1; j <= l; ++j)
    s.alphas[j - 1] = normalize_angle(2.0 * acot(std::tan(2.0 * kPi * j / s.L) * root));
  s.betas = matched_betas(s.alphas, mode);
  return s;
}

ZetaSequence zeta_sequence(const PhaseSchedule& schedule) {
  if (schedule.mode != Mode::amplify)
    throw std::invalid_argument("zeta_sequence: defined for amplify schedules only");
  const int l = schedule.l;
  const int L = schedule.L;
  const double root = std::sqrt(std::max(0.0, 1.0 - schedule.gamma * schedule.gamma));

  std::vector<double> diff(L);  // diff[k] = zeta_{k+1} - zeta_k, k = 1..L-1
  for (int k = 1; k < L; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    diff[k] = sgn * kPi - 2.0 * acot(std::tan(k * kPi / L) * root);
  }

  std::vector<double> z(L + 1);  // 1-indexed
  z[l + 1] = (l % 2 == 0) ? kPi / 2 : -kPi / 2;
  for (int k = l + 1; k < L; ++k) z[k + 1] = z[k] + diff[k];
  for (int k = l; k >= 1; --k) z[k] = z[k + 1] - diff[k];

  ZetaSequence out;
  out.zetas.resize(L);
  for (int k = 1; k <= L; ++k) out.zetas[k - 1] = normalize_angle(z[k]);
  return out;
}

PhaseSchedule nest_schedules(const PhaseSchedule& inner, const PhaseSchedule& outer, Mode mode) {
  const int l1 = inner.l;
  const int l2 = outer.l;
  const int L1 = inner.L;
  PhaseSchedule s;
  s.l = l1 + 2 * l1 * l2 + l2;
  s.L = inner.L * outer.L;
  s.delta = outer.delta;
  s.gamma = gamma_of(outer.delta, s.L);
  s.mode = mode;
  s.alphas.resize(s.l);
  // iterate j carries the inner angle at residues +-h (mod L1) and the outer
  // angle at multiples of L1; together these cover j = 1..l exactly once
  for (int j = 1; j <= s.l; ++j) {
    const int r = j % L1;
    double a;
    if (r == 0)
      a = outer.alphas[j / L1 - 1];
    else if (r <= l1)
      a = inner.alphas[r - 1];
    else
      a = normalize_angle(-inner.alphas[L1 - r - 1]);
    s.alphas[j - 1] = a;
  }
  s.betas = matched_betas(s.alphas, mode);
  return s;
}

PhaseSchedule nest(int inner_l, int outer_l, double delta, Mode mode) {
  if (inner_l < 1 || outer_l < 1)
    throw std::domain_error("nest: component iterate counts must be >= 1");
  require_delta(delta, "nest");
  const int L2 = 2 * outer_l + 1;
  const PhaseSchedule inner = fixed_point_phases(inner_l, component_delta(delta, L2));
  const PhaseSchedule outer = fixed_point_phases(outer_l, delta);
  return nest_schedules(inner, outer, mode);
}

PhaseSchedule nest_many(const std::vector<int>& ls, double delta, Mode mode) {
  if (ls.empty()) throw std::domain_error("nest_many: need at least one component");
  for (int l : ls)
    if (l < 1) throw std::domain_error("nest_many: component iterate counts must be >= 1");
  require_delta(delta, "nest_many");
  if (ls.size() == 1) return fixed_point_phases(ls[0], delta, mode);

  // the i-th fold level targets the error bound induced by everything outside it
  std::vector<double> target(ls.size());
  target.back() = delta;
  for (int i = static_cast<int>(ls.size()) - 2; i >= 0; --i)
    target[i] = component_delta(target[i + 1], 2 * ls[i + 1] + 1);

  PhaseSchedule acc = fixed_point_phases(ls[0], target[0]);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const Mode step_mode = (i + 1 == ls.size()) ? mode : Mode::amplify;
    acc = nest_schedules(acc, fixed_point_phases(ls[i], target[i]), step_mode);
  }
  return acc;
}

void to_json(nlohmann::json& j, const PhaseSchedule& s) {
  j = nlohmann::json{{"l", s.l},           {"L", s.L},
                     {"delta", s.delta},   {"mode", to_string(s.mode)},
                     {"alphas", s.alphas}, {"betas", s.betas}};
}

void from_json(const nlohmann::json& j, PhaseSchedule& s) {
  j.at("l").get_to(s.l);
  j.at("L").get_to(s.L);
  j.at("delta").get_to(s.delta);
  s.mode = mode_from_string(j.at("mode").get<std::string>());
  j.at("alphas").get_to(s.alphas);
  j.at("betas").get_to(s.betas);
  if (s.L != 2 * s.l + 1 || static_cast<int>(s.alphas.size()) != s.l ||
      static_cast<int>(s.betas.size()) != s.l)
    throw std::invalid_argument("PhaseSchedule: inconsistent l/L/angle list sizes");
  s.gamma = gamma_of(s.delta, s.L);
}

}  // namespace fpsearch
