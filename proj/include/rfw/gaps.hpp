#pragma once

#include "rfw/core.hpp"
#include "rfw/objectives.hpp"
#include "rfw/oracles.hpp"

namespace rfw {

inline constexpr double kFeasibilityTol = 1e-8;

/// Gradient and dual gaps at one iterate. The gradient is kept so the step
/// that follows does not evaluate it again.
struct GapEvaluation {
  Vector gradient;
  GapReport report;
};

/// Frank-Wolfe gap, away gap and strong Wolfe gap at x. Costs one LMO call and
/// one gradient evaluation, both charged to `counters`. Without an active set
/// the away gap is zero.
GapEvaluation compute_gaps(const FeasibleRegion& region, const Objective& obj, const Vector& x,
                           const ActiveSet* s, OracleCounters& counters);

/// Same, from an already evaluated gradient (no gradient call charged).
GapEvaluation compute_gaps_from_gradient(const FeasibleRegion& region, Vector gradient,
                                         const Vector& x, const ActiveSet* s,
                                         OracleCounters& counters);

}  // namespace rfw
