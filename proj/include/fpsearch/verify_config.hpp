#pragma once

#include <cstddef>

// Grids and tolerances used by the verification suites.  Versioned so that
// reports can state exactly which configuration produced them; bump kVersion
// whenever a grid or tolerance changes.
namespace fpsearch::verifycfg {

inline constexpr int kVersion = 1;

// shared coupling grid: points log-spaced in (kLambdaMin, 1]
inline constexpr double kLambdaMin = 1e-3;
inline constexpr int kLambdaPoints = 200;
inline constexpr int kLambdaPointsQuick = 40;

inline constexpr double kDeltaSqGrid[] = {0.9, 0.5, 0.1, 0.01, 0.0};

// suite 1: simulated sequence vs closed form
inline constexpr int kEquivLMax = 12;
inline constexpr int kEquivLMaxQuick = 6;
inline constexpr double kTolEquiv = 1e-9;

// suite 2: success floor inside the converged region
inline constexpr double kBoundSlack = 1e-12;

// suite 3: width shrinks with sequence length
inline constexpr int kWidthLMax = 199;
inline constexpr int kWidthLMaxQuick = 99;
inline constexpr double kWidthDeltaSq[] = {0.5, 0.1, 0.01};

// suite 4: delta = 1 reduces to the classic amplification sequence
inline constexpr int kGroverLMax = 12;
inline constexpr double kTolGrover = 1e-10;

// suite 5: self-nested three-iterate schedules
inline constexpr int kPi3KMax = 3;
inline constexpr double kTolPi3 = 1e-9;

// suite 6: query counts at reference operating points
inline constexpr double kPointDeltaSq = 0.1;
inline constexpr double kPointLambdaA = 0.25;
inline constexpr int kPointQueriesA = 4;
inline constexpr double kPointLambdaB = 0.03;
inline constexpr double kPointThreshold = 0.9;
inline constexpr int kPointPi3QueriesA = 8;
inline constexpr int kPointPi3QueriesB = 80;

// suite 7: two-level nesting
inline constexpr int kNestLMax = 3;
inline constexpr double kNestDeltaSq[] = {0.5, 0.1};
inline constexpr double kTolNest = 1e-9;

// suite 8: statevector engines
inline constexpr int kSvQubits = 10;
inline constexpr int kSvQubitsQuick = 6;
inline constexpr std::size_t kSvMarked[] = {1, 4, 37};
inline constexpr std::size_t kSvMarkedQuick[] = {1, 3};
inline constexpr int kSvL[] = {2, 6};
inline constexpr double kSvDeltaSq = 0.1;
inline constexpr double kTolSv = 1e-9;
inline constexpr double kTolFidelity = 1e-10;
inline constexpr double kTolLeak = 1e-20;

// suite 9: composite-pulse form of the sequence
inline constexpr int kPulseLMax = 8;
inline constexpr double kTolPulse = 1e-10;

// suite 10: generalized Chebyshev recurrence vs ratio form
inline constexpr int kGenChebLMax = 10;
inline constexpr double kGenChebGammas[] = {0.2, 0.5, 0.9, 1.0};
inline constexpr int kGenChebXPoints = 50;
inline constexpr double kTolGenCheb = 1e-10;

// suite 11: avoidance mode
inline constexpr int kAvoidLMax = 6;
inline constexpr double kTolAvoid = 1e-9;

// suite 12: query-count scaling fit
inline constexpr double kScaleDeltaSq = 0.1;
inline constexpr double kScaleLambda0Min = 1e-4;
inline constexpr double kScaleLambda0Max = 1e-1;
inline constexpr int kScalePoints = 40;
inline constexpr double kScaleBandLo = 0.8;
inline constexpr double kScaleBandHi = 1.2;

// extra invariant suites
inline constexpr double kTolSemigroup = 1e-10;       // relative above magnitude 1
inline constexpr double kTolFracInverse = 1e-10;
inline constexpr double kTolRecurrence = 1e-9;
inline constexpr double kTolAux = 1e-10;
inline constexpr double kTolNorm = 1e-12;
inline constexpr int kNormReflections = 10000;
inline constexpr int kNormReflectionsQuick = 2000;

}  // namespace fpsearch::verifycfg
