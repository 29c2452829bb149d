#pragma once

#include <cstdint>

#include "rfw/core.hpp"
#include "rfw/objectives.hpp"
#include "rfw/oracles.hpp"

namespace rfw {

/// Consecutive near-zero-progress steps after which a run reports Stalled.
inline constexpr int kStallWindow = 50;
inline constexpr double kStallTolerance = 1e-15;
/// The iterate is rebuilt from the active set this often to shed drift.
inline constexpr std::int64_t kReconstructEvery = 1000;

// Run logs hold one record per iteration: the state at x_t (objective, gaps,
// support size, cumulative oracle counters) and the step taken from it. The
// last record is a Null step describing the returned iterate.

struct AfwSegment {
  ActiveSet active_set;
  RunLog log;
};

/// One fractional away-step segment: iterate until w(x_t, S_t) <= e^-gamma
/// w_reference. Steps go toward the FW vertex when its slope exceeds
/// e^-gamma w_reference / 2, otherwise away from the worst support vertex.
/// Returns immediately (empty log) when w_reference <= cfg.target_gap.
AfwSegment fractional_afw(const FeasibleRegion& region, const Objective& obj, const ActiveSet& s0,
                          const SolverConfig& cfg, double w_reference, std::int64_t budget);

/// Chained fractional away-step segments, each restarted from the previous
/// output with its strong Wolfe gap as reference, until w <= target_gap.
/// A burn-in phase runs first when cfg.curvature_estimate is set.
RunLog scheduled_restarts(const FeasibleRegion& region, const Objective& obj, const ActiveSet& s0,
                          const SolverConfig& cfg);
RunLog scheduled_restarts(const FeasibleRegion& region, const Objective& obj, const Vertex& x0,
                          const SolverConfig& cfg);

/// Restart segments until e^-gamma w(x, S) / 2 <= cfg.curvature_estimate, capped
/// at ceil(8 e^gamma / gamma ln(w0 / 2C)) + |S0| iterations. No-op without an
/// estimate.
ActiveSet burn_in(const FeasibleRegion& region, const Objective& obj, const ActiveSet& s0,
                  const SolverConfig& cfg);

/// Iteration cap of the burn-in phase for a given initial gap and curvature.
std::int64_t burn_in_iteration_cap(double gamma, double w0, double curvature,
                                   std::size_t initial_support);

struct FwSegment {
  Vector x;
  RunLog log;
};

/// FW-only segment until g(x_t) <= e^-gamma g_reference.
FwSegment fractional_fw(const FeasibleRegion& region, const Objective& obj, const Vector& x0,
                        const SolverConfig& cfg, double g_reference, std::int64_t budget);

/// FW steps while the FW slope exceeds Phi e^-gamma; otherwise Phi is reset to
/// the current FW gap. Phi updates are logged as restart boundaries.
RunLog restart_fractional_fw(const FeasibleRegion& region, const Objective& obj, const Vector& x0,
                             const SolverConfig& cfg);

RunLog vanilla_fw(const FeasibleRegion& region, const Objective& obj, const Vector& x0,
                  const SolverConfig& cfg);

/// A single fractional away-step segment with gamma = ln(w0/epsilon) + 0.1.
/// Stops once w < epsilon or the away branch would be selected; in the latter
/// case the FW gap is already below epsilon.
RunLog one_shot_large_gamma(const FeasibleRegion& region, const Objective& obj,
                            const ActiveSet& s0, double epsilon, const SolverConfig& cfg);

}  // namespace rfw
