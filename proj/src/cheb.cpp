#include "fpsearch/cheb.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fpsearch {

namespace {

// inputs this close to a branch joint are snapped onto it
constexpr double kJointWindow = 1e-14;

// cosh overflows double a little above this argument
constexpr double kCoshArgMax = 709.7;

double snap_joint(double x) {
  if (std::abs(x - 1.0) <= kJointWindow) return 1.0;
  if (std::abs(x + 1.0) <= kJointWindow) return -1.0;
  return x;
}

void require_odd_positive(int L, const char* who) {
  if (L < 1 || L % 2 == 0)
    throw std::domain_error(std::string(who) + ": order must be an odd positive integer, got " +
                            std::to_string(L));
}

}  // namespace

double acot(double x) {
  if (x == 0.0) return std::numbers::pi / 2;
  return std::atan(1.0 / x);
}

double cheb_T(int n, double x) {
  if (n < 0) throw std::domain_error("cheb_T: order must be nonnegative");
  x = snap_joint(x);
  if (n == 0 || x == 1.0) return 1.0;
  if (x == -1.0) return (n % 2 == 0) ? 1.0 : -1.0;
  // the compositions T_p(T_q(.)) and T_L(T_{1/L}(.)) amplify rounding error by
  // roughly n^2 * |T| / arccosh|x|, so evaluate the transcendentals in long
  // double to keep the advertised 1e-10 roundtrip guarantees
  const long double xl = x;
  if (std::abs(x) < 1.0) return static_cast<double>(std::cos(n * std::acos(xl)));
  const long double a = std::acosh(std::abs(xl));
  if (static_cast<double>(n * a) > kCoshArgMax)
    throw std::overflow_error("cheb_T: result exceeds double range (order " + std::to_string(n) +
                              ", x = " + std::to_string(x) + ")");
  const long double t = std::cosh(n * a);
  return static_cast<double>((x > 1.0 || n % 2 == 0) ? t : -t);
}

double cheb_T_frac(int L, double x) {
  require_odd_positive(L, "cheb_T_frac");
  x = snap_joint(x);
  if (x < 1.0)
    throw std::domain_error("cheb_T_frac: defined only for x >= 1, got " + std::to_string(x));
  if (x == 1.0 || L == 1) return x;
  const long double xl = x;
  return static_cast<double>(std::cosh(std::acosh(xl) / L));
}

double gamma_of(double delta, int L) {
  require_odd_positive(L, "gamma_of");
  if (delta < 0.0 || delta > 1.0)
    throw std::domain_error("gamma_of: delta must lie in [0, 1], got " + std::to_string(delta));
  if (delta == 0.0) return 0.0;  // limit of 1/T_{1/L}(1/delta) as delta -> 0
  if (delta == 1.0) return 1.0;
  return 1.0 / cheb_T_frac(L, 1.0 / delta);
}

std::complex<double> gen_cheb_a(int L, double gamma, double x) {
  require_odd_positive(L, "gen_cheb_a");
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::domain_error("gen_cheb_a: gamma must lie in (0, 1]; the gamma = 0 case has its own "
                            "closed-form limit");
  if (x < 0.0 || x > 1.0)
    throw std::domain_error("gen_cheb_a: x must lie in [0, 1], got " + std::to_string(x));

  // The recurrence consumes only consecutive pulse-phase differences, which
  // depend on gamma alone; no anchor value is needed here. All intermediate
  // a_h are bounded by 1 (they are components of a unit vector), so the
  // iteration cannot overflow.
  const double pi = std::numbers::pi;
  const double root = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
  std::complex<double> a_prev(1.0, 0.0);  // a_0
  std::complex<double> a_cur(x, 0.0);     // a_1
  for (int h = 2; h <= L; ++h) {
    const int k = h - 1;
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    const double diff = sgn * pi - 2.0 * acot(std::tan(k * pi / L) * root);
    const std::complex<double> e = std::polar(1.0, -diff);
    const std::complex<double> a_next = x * (1.0 + e) * a_cur - e * a_prev;
    a_prev = a_cur;
    a_cur = a_next;
  }
  return a_cur;
}

}  // namespace fpsearch
