#pragma once

#include <complex>

namespace fpsearch {

// inverse cotangent with range (-pi/2, pi/2] and acot(0) = pi/2
double acot(double x);

// Chebyshev polynomial of the first kind, integer order n >= 0, any real x.
// Uses the closed form of the matching branch (cos/arccos inside [-1,1],
// cosh/arccosh outside, exact values at the joints). Throws std::overflow_error
// instead of returning IEEE inf when the result leaves the double range.
double cheb_T(int n, double x);

// fractional order 1/L (odd L >= 1) on x >= 1: cosh(arccosh(x)/L), in [1, x]
double cheb_T_frac(int L, double x);

// gamma with 1/gamma = T_{1/L}(1/delta); exactly 0 at delta = 0, 1 at delta = 1
double gamma_of(double delta, int L);

// Generalized degree-L polynomial a_L evaluated by the decoupled two-term
// recurrence over the pulse-phase differences generated by gamma.
// The modulus of the result equals |T_L(x/gamma)| / T_L(1/gamma).
std::complex<double> gen_cheb_a(int L, double gamma, double x);

}  // namespace fpsearch
