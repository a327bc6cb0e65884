#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fpsearch {

enum class Mode { amplify, avoid };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

// Phase angles alpha_1..alpha_l and beta_1..beta_l of a length-L reflection
// sequence together with the parameters that generated them. All angles are
// kept in (-pi, pi]. amplify keeps beta_{l-j+1} = -alpha_j, avoid flips the sign.
struct PhaseSchedule {
  int l = 0;
  int L = 1;
  double delta = 1.0;
  double gamma = 1.0;
  std::vector<double> alphas;
  std::vector<double> betas;
  Mode mode = Mode::amplify;
};

// zeta_1..zeta_L of the equivalent composite-pulse sequence (palindromic,
// anchored at zeta_{l+1} = (-1)^l pi/2)
struct ZetaSequence {
  std::vector<double> zetas;
};

// reduce an angle to (-pi, pi]
double normalize_angle(double t);

// angles are equal when they differ by a multiple of 2 pi (so +pi == -pi)
bool angles_equal(double a, double b, double tol = 1e-12);

PhaseSchedule fixed_point_phases(int l, double delta, Mode mode = Mode::amplify);

ZetaSequence zeta_sequence(const PhaseSchedule& schedule);

// Compose inner (l1 iterates) inside outer (l2 iterates): the result runs the
// L1*L2 reflections as l1 + 2*l1*l2 + l2 iterates. For the closed-form
// guarantee at total error delta the inner component must be built at
// delta_1 = 1/T_{1/L2}(1/delta) and the outer at delta itself; nest() and
// nest_many() arrange that.
PhaseSchedule nest_schedules(const PhaseSchedule& inner, const PhaseSchedule& outer, Mode mode);

PhaseSchedule nest(int inner_l, int outer_l, double delta, Mode mode = Mode::amplify);

// left fold over two or more component iterate counts
PhaseSchedule nest_many(const std::vector<int>& ls, double delta, Mode mode = Mode::amplify);

// serialization: {l, L, delta, mode, alphas[], betas[]}
void to_json(nlohmann::json& j, const PhaseSchedule& s);
void from_json(const nlohmann::json& j, PhaseSchedule& s);

}  // namespace fpsearch
