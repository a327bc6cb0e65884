#pragma once

#include <complex>
#include <vector>

#include "fpsearch/schedule.hpp"

namespace fpsearch {

using Complex = std::complex<double>;

// Problem parameters in the two-dimensional invariant subspace. lambda is the
// squared source/target overlap, delta the amplitude error bound; phi is the
// derived rotation angle with sin(phi/2) = sqrt(lambda). lambda = 0 is carried
// as a degenerate case (flagged, never amplified) rather than rejected.
struct SearchParams {
  double lambda = 0.0;
  double delta = 1.0;
  double phi = 0.0;
  double xi = 0.0;
  bool lambda_zero = false;
};

SearchParams make_params(double lambda, double delta);

// amplitudes on the {|tbar>, |t>} basis
struct TwoLevelState {
  Complex a_tbar{1.0, 0.0};
  Complex a_t{0.0, 0.0};

  double norm2() const { return std::norm(a_tbar) + std::norm(a_t); }
  double p_target() const { return std::norm(a_t); }
  // relative phase of the target amplitude (reported, never asserted)
  double chi() const;
};

TwoLevelState initial_state(const SearchParams& params);

// S_s(alpha) = I - (1 - e^{-i alpha}) |s><s|
TwoLevelState reflect_s(const TwoLevelState& state, double alpha, const SearchParams& params);

// S_t(beta) = I - (1 - e^{i beta}) |t><t|
TwoLevelState reflect_t(const TwoLevelState& state, double beta);

// applies -S_s(alpha_j) S_t(beta_j) for j = 1..l to the initial state; the -1
// scalar is kept so amplitude-level comparisons are exact
TwoLevelState apply_sequence(const PhaseSchedule& schedule, const SearchParams& params);

// P_L = 1 - delta^2 T_L(T_{1/L}(1/delta) sqrt(1-lambda))^2, with the delta = 0
// limit 1 - (1-lambda)^L; clamped to [0, 1]
double success_prob_closed(int L, double delta, double lambda);

struct WidthResult {
  double exact;   // 1 - gamma^2
  double approx;  // (log(2/delta) / L)^2, for diagnostics
};
WidthResult width(int L, double delta);
double width_exact(int L, double delta);

struct MinQueriesResult {
  int L = 1;
  int queries = 0;
  double bound = 0.0;       // analytic lower bound log(2/delta)/sqrt(lambda0)
  double width_at = 0.0;    // width(L, delta)
  double width_prev = 1.0;  // width(L-2, delta), 1 when L = 1
};
MinQueriesResult min_queries(double delta, double lambda0);

// Composite-pulse form of the sequence: the product of L pulses A_zeta applied
// to |0>, with the zeta list shifted uniformly so the first pulse is exactly
// the preparation of |s> (pulse phase pi/2). Matches apply_sequence up to a
// global phase.
TwoLevelState pulse_form_state(const PhaseSchedule& schedule, const SearchParams& params);

struct RecurrenceResult {
  std::vector<Complex> a;   // a_0..a_L, first components
  std::vector<Complex> b;   // second components
  double max_aux_residual;  // max_h |b'_h + a_{h-1}|
};
RecurrenceResult amplitude_recurrence(const PhaseSchedule& schedule, const SearchParams& params);

// sin^2((2l+1) arcsin sqrt(lambda))
double grover_reference(int l, double lambda);

struct Pi3Result {
  double p = 0.0;
  long long queries = 0;
};
// P = 1 - (1-lambda)^{3^k}, queries = 3^k - 1
Pi3Result pi3_reference(int k, double lambda);

// |<tbar|out>|^2 for an avoid-mode schedule; follows the closed-form law
// evaluated at the avoided component's overlap, success_prob_closed(L, delta, 1-lambda)
double avoidance_prob(const PhaseSchedule& schedule, const SearchParams& params);

}  // namespace fpsearch
