#include "rfw/gaps.hpp"

#include <cmath>

namespace rfw {

namespace {

// Gaps are differences of inner products; rounding, and iterates sitting up to
// kFeasibilityTol outside the region, can push an exact zero slightly negative.
double clamp_gap(double g, double scale, double slack) {
  const double tol = 1e-12 + 1e-12 * scale + slack;
  return g < 0.0 && g >= -tol ? 0.0 : g;
}

}  // namespace

GapEvaluation compute_gaps_from_gradient(const FeasibleRegion& region, Vector gradient,
                                         const Vector& x, const ActiveSet* s,
                                         OracleCounters& counters) {
  if (!region.contains(x, kFeasibilityTol)) {
    throw DomainError("compute_gaps: iterate is outside " + region.name());
  }
  GapEvaluation out;
  out.report.fw_vertex = lmo(region, gradient);
  ++counters.lmo_calls;
  const double gx = gradient.dot(x);
  const double slack = kFeasibilityTol * gradient.lpNorm<1>();
  const double gv = gradient.dot(out.report.fw_vertex.point);
  out.report.fw_gap = clamp_gap(gx - gv, std::abs(gx) + std::abs(gv), slack);
  if (s != nullptr) {
    const ActiveEntry& a = away_vertex(*s, gradient);
    out.report.away_vertex = Vertex{a.id, a.vertex};
    const double ga = gradient.dot(a.vertex);
    out.report.away_gap = clamp_gap(ga - gx, std::abs(gx) + std::abs(ga), slack);
  }
  if (out.report.fw_gap < 0.0 || out.report.away_gap < 0.0) {
    throw DomainError("compute_gaps: negative gap; iterate inconsistent with region or support");
  }
  out.report.strong_wolfe_gap = out.report.fw_gap + out.report.away_gap;
  out.gradient = std::move(gradient);
  return out;
}

GapEvaluation compute_gaps(const FeasibleRegion& region, const Objective& obj, const Vector& x,
                           const ActiveSet* s, OracleCounters& counters) {
  Vector g = obj.gradient(x);
  ++counters.grad_calls;
  return compute_gaps_from_gradient(region, std::move(g), x, s, counters);
}

}  // namespace rfw
