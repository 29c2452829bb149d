#include "rfw/algorithms.hpp"

#include <cmath>
#include <limits>

#include "rfw/gaps.hpp"
#include "rfw/linesearch.hpp"

namespace rfw {

namespace {

enum class SegmentExit { Contracted, TargetReached, Budget, Stalled, IterationCap, AwaySelected };

constexpr double kNullDirectionNorm = 1e-14;

/// Mutable state of one solver run. Owns the iterate, the optional active set,
/// the oracle counters and the log.
class Runner {
 public:
  Runner(const FeasibleRegion& region, const Objective& obj, const SolverConfig& cfg,
         std::int64_t budget)
      : region_(region), obj_(obj), cfg_(cfg), budget_(budget) {
    cfg_.validate();
    if (region.dim() != obj.dim()) {
      throw DomainError("region dimension " + std::to_string(region.dim()) +
                        " differs from objective dimension " + std::to_string(obj.dim()));
    }
    line_search_ = cfg.line_search.value_or(obj.default_line_search());
    if (line_search_ == LineSearchKind::ExactQuadratic && obj.kind() != ObjectiveKind::LeastSquares) {
      throw DomainError("exact line search needs a least-squares objective");
    }
    lipschitz_ = LipschitzState::from(cfg.adaptive);
  }

  void start(Vector x0) {
    if (!region_.contains(x0, kFeasibilityTol)) throw DomainError("starting point is infeasible");
    x_ = std::move(x0);
    f_ = obj_.value(x_);
  }

  void start(ActiveSet s0) {
    s0.validate();
    if (!region_.is_polytope()) {
      throw UnsupportedError("away steps need a polytope; " + region_.name() + " is not one");
    }
    Vector x = s0.reconstruct();
    active_ = std::move(s0);
    start(std::move(x));
  }

  bool has_active_set() const { return active_.has_value(); }
  const ActiveSet& active_set() const { return *active_; }
  const Vector& x() const { return x_; }
  double f() const { return f_; }
  std::int64_t t() const { return t_; }
  const OracleCounters& counters() const { return counters_; }
  const SolverConfig& config() const { return cfg_; }
  RunLog& log() { return log_; }
  std::int64_t& restart_index() { return restart_index_; }

  bool evaluated() const { return eval_.has_value(); }
  bool can_evaluate() const { return counters_.total() + 2 <= budget_; }
  /// A step is only taken if the evaluation after it still fits the budget.
  bool can_step() const { return counters_.total() + 2 <= budget_; }
  bool stalled() const { return stall_count_ >= kStallWindow; }

  const GapEvaluation& evaluate() {
    if (eval_) return *eval_;
    if (!region_.contains(x_, kFeasibilityTol) && active_) {
      x_ = active_->reconstruct();
      f_ = obj_.value(x_);
    }
    const ActiveSet* s = active_ ? &*active_ : nullptr;
    eval_ = compute_gaps(region_, obj_, x_, s, counters_);
    return *eval_;
  }

  /// Moves along the FW direction or away from the given support vertex.
  void step(StepType kind, const GapEvaluation& ev) {
    Vector d;
    double eta_max = 1.0;
    if (kind == StepType::FW) {
      d = ev.report.fw_vertex.point - x_;
    } else {
      const Vertex& a = *ev.report.away_vertex;
      d = x_ - a.point;
      eta_max = active_->max_away_step(a.id);
    }

    IterationRecord rec = snapshot(ev);
    if (d.lpNorm<Eigen::Infinity>() < kNullDirectionNorm) {
      rec.step_type = StepType::Null;
      log_.records.push_back(rec);
      ++t_;
      ++stall_count_;
      return;
    }

    const double f_old = f_;
    const double slope = ev.gradient.dot(d);
    double eta = 0.0;
    double f_new = 0.0;
    double accepted_l = 0.0;
    switch (line_search_) {
      case LineSearchKind::ExactQuadratic:
        eta = exact_quadratic(obj_, ev.gradient, d, std::isinf(eta_max) ? 1e300 : eta_max);
        f_new = obj_.value(x_ + eta * d);
        break;
      case LineSearchKind::GoldenSection: {
        const double hi = std::isinf(eta_max) ? 1.0 : eta_max;
        eta = golden_section(obj_, x_, d, hi);
        f_new = obj_.value(x_ + eta * d);
        break;
      }
      case LineSearchKind::Adaptive: {
        AdaptiveStep a = adaptive_step(lipschitz_, obj_, x_, d, eta_max, ev.gradient, f_);
        eta = a.eta;
        f_new = a.f_new;
        lipschitz_ = a.state;
        accepted_l = a.state.current_l;
        break;
      }
    }

    bool drop = false;
    if (active_) {
      if (kind == StepType::FW) {
        active_->apply_fw_step(ev.report.fw_vertex, eta);
      } else {
        if (eta > eta_max) eta = eta_max;
        drop = active_->apply_away_step(ev.report.away_vertex->id, eta);
      }
    }
    x_ += eta * d;
    f_ = f_new;
    ++t_;
    if (active_ && t_ % kReconstructEvery == 0) {
      x_ = active_->reconstruct();
      f_ = obj_.value(x_);
    }
    eval_.reset();

    rec.step_type = drop ? StepType::Drop : kind;
    rec.eta = eta;
    log_.records.push_back(rec);

    if (std::abs(f_old - f_) < kStallTolerance) {
      ++stall_count_;
    } else {
      stall_count_ = 0;
    }

    if (cfg_.on_step) {
      StepTrace tr;
      tr.t = rec.t;
      tr.f_before = f_old;
      tr.f_after = f_new;
      tr.slope = slope;
      tr.direction_norm_sq = d.squaredNorm();
      tr.eta = eta;
      tr.eta_max = eta_max;
      tr.lipschitz = accepted_l;
      cfg_.on_step(tr);
    }
  }

  void boundary(double gap, bool burn) {
    log_.restart_boundaries.push_back(
        {restart_index_, t_, gap, active_ ? std::int64_t(active_->size()) : 0, burn});
  }

  /// Appends the terminal record and fills the summary fields.
  RunLog finish(Termination term) {
    log_.termination = term;
    log_.final_x = x_;
    log_.final_f = f_;
    log_.final_active_set = active_;
    log_.counters = counters_;
    log_.iterations = t_;
    if (eval_) {
      log_.final_fw_gap = eval_->report.fw_gap;
      log_.final_strong_wolfe_gap = eval_->report.strong_wolfe_gap;
      log_.records.push_back(snapshot(*eval_));
    } else {
      log_.final_fw_gap = std::numeric_limits<double>::quiet_NaN();
      log_.final_strong_wolfe_gap = std::numeric_limits<double>::quiet_NaN();
    }
    return std::move(log_);
  }

 private:
  IterationRecord snapshot(const GapEvaluation& ev) const {
    IterationRecord r;
    r.t = t_;
    r.step_type = StepType::Null;
    r.f_value = f_;
    r.fw_gap = ev.report.fw_gap;
    r.strong_wolfe_gap = active_ ? ev.report.strong_wolfe_gap : ev.report.fw_gap;
    r.active_set_size = active_ ? std::int64_t(active_->size()) : 0;
    r.lmo_calls = counters_.lmo_calls;
    r.grad_calls = counters_.grad_calls;
    r.restart_index = restart_index_;
    return r;
  }

  const FeasibleRegion& region_;
  const Objective& obj_;
  SolverConfig cfg_;
  std::int64_t budget_;
  LineSearchKind line_search_;
  LipschitzState lipschitz_;

  Vector x_;
  double f_ = 0.0;
  std::optional<ActiveSet> active_;
  std::optional<GapEvaluation> eval_;
  OracleCounters counters_;
  std::int64_t t_ = 0;
  std::int64_t restart_index_ = 0;
  int stall_count_ = 0;
  RunLog log_;
};

/// Inner loop shared by every away-step variant.
SegmentExit run_afw_segment(Runner& run, double w_reference, double gamma,
                            std::int64_t iteration_cap, bool stop_on_away) {
  const double exit_level = std::exp(-gamma) * w_reference;
  const double fw_threshold = exit_level / 2.0;
  const std::int64_t t_start = run.t();
  while (true) {
    if (!run.evaluated() && !run.can_evaluate()) return SegmentExit::Budget;
    const GapEvaluation& ev = run.evaluate();
    const double w = ev.report.strong_wolfe_gap;
    if (w <= run.config().target_gap) return SegmentExit::TargetReached;
    if (w <= exit_level) return SegmentExit::Contracted;
    if (!run.can_step()) return SegmentExit::Budget;
    if (run.stalled()) return SegmentExit::Stalled;
    if (run.t() - t_start >= iteration_cap) return SegmentExit::IterationCap;

    if (ev.report.fw_gap > fw_threshold) {
      run.step(StepType::FW, ev);
    } else {
      if (stop_on_away) return SegmentExit::AwaySelected;
      run.step(StepType::Away, ev);
    }
  }
}

SegmentExit run_fw_segment(Runner& run, double g_reference, double gamma) {
  const double exit_level = std::exp(-gamma) * g_reference;
  while (true) {
    if (!run.evaluated() && !run.can_evaluate()) return SegmentExit::Budget;
    const GapEvaluation& ev = run.evaluate();
    if (ev.report.fw_gap <= run.config().target_gap) return SegmentExit::TargetReached;
    if (ev.report.fw_gap <= exit_level) return SegmentExit::Contracted;
    if (!run.can_step()) return SegmentExit::Budget;
    if (run.stalled()) return SegmentExit::Stalled;
    run.step(StepType::FW, ev);
  }
}

Termination termination_of(SegmentExit e) {
  switch (e) {
    case SegmentExit::Budget: return Termination::OracleBudget;
    case SegmentExit::Stalled: return Termination::Stalled;
    default: return Termination::GapReached;
  }
}

constexpr std::int64_t kNoCap = std::numeric_limits<std::int64_t>::max();

/// Burn-in on an already started runner. Returns false if the budget or a
/// stall ended the run early.
bool run_burn_in(Runner& run, SegmentExit& last) {
  const SolverConfig& cfg = run.config();
  if (!cfg.curvature_estimate) return true;
  const double curvature = *cfg.curvature_estimate;
  if (!run.evaluated() && !run.can_evaluate()) {
    last = SegmentExit::Budget;
    return false;
  }
  const double w0 = run.evaluate().report.strong_wolfe_gap;
  const std::int64_t cap =
      burn_in_iteration_cap(cfg.gamma, w0, curvature, run.active_set().size());
  const std::int64_t t_start = run.t();
  while (true) {
    const double w = run.evaluate().report.strong_wolfe_gap;
    if (std::exp(-cfg.gamma) * w / 2.0 <= curvature) return true;
    if (w <= cfg.target_gap) return true;
    const std::int64_t used = run.t() - t_start;
    if (used >= cap) return true;
    run.boundary(w, true);
    last = run_afw_segment(run, w, cfg.gamma, cap - used, false);
    switch (last) {
      case SegmentExit::Contracted:
        ++run.restart_index();
        break;
      case SegmentExit::IterationCap:
      case SegmentExit::TargetReached:
        return true;
      default:
        return false;
    }
    if (!run.evaluated() && !run.can_evaluate()) {
      last = SegmentExit::Budget;
      return false;
    }
  }
}

}  // namespace

std::int64_t burn_in_iteration_cap(double gamma, double w0, double curvature,
                                   std::size_t initial_support) {
  if (!(gamma > 0.0) || !(curvature > 0.0)) throw DomainError("burn-in needs gamma, C > 0");
  const double ratio = w0 / (2.0 * curvature);
  const double iters = ratio > 1.0 ? std::ceil(8.0 * std::exp(gamma) / gamma * std::log(ratio)) : 0.0;
  return static_cast<std::int64_t>(iters) + static_cast<std::int64_t>(initial_support);
}

AfwSegment fractional_afw(const FeasibleRegion& region, const Objective& obj, const ActiveSet& s0,
                          const SolverConfig& cfg, double w_reference, std::int64_t budget) {
  if (!region.is_polytope()) {
    throw UnsupportedError("away steps need a polytope; " + region.name() + " is not one");
  }
  if (!(w_reference > 0.0)) throw DomainError("w_reference must be positive");
  Runner run(region, obj, cfg, budget);
  run.start(s0);
  if (w_reference <= cfg.target_gap) {
    RunLog log = run.finish(Termination::GapReached);
    return {s0, std::move(log)};
  }
  run.boundary(w_reference, false);
  const SegmentExit e = run_afw_segment(run, w_reference, cfg.gamma, kNoCap, false);
  ActiveSet out = run.active_set();
  return {std::move(out), run.finish(termination_of(e))};
}

RunLog scheduled_restarts(const FeasibleRegion& region, const Objective& obj, const ActiveSet& s0,
                          const SolverConfig& cfg) {
  Runner run(region, obj, cfg, cfg.max_oracle_calls);
  run.start(s0);

  SegmentExit last = SegmentExit::Contracted;
  if (!run_burn_in(run, last)) return run.finish(termination_of(last));

  while (true) {
    if (!run.evaluated() && !run.can_evaluate()) return run.finish(Termination::OracleBudget);
    const double w = run.evaluate().report.strong_wolfe_gap;
    if (w <= cfg.target_gap) return run.finish(Termination::GapReached);
    run.boundary(w, false);
    last = run_afw_segment(run, w, cfg.gamma, kNoCap, false);
    if (last != SegmentExit::Contracted) return run.finish(termination_of(last));
    ++run.restart_index();
  }
}

RunLog scheduled_restarts(const FeasibleRegion& region, const Objective& obj, const Vertex& x0,
                          const SolverConfig& cfg) {
  return scheduled_restarts(region, obj, ActiveSet::singleton(x0, cfg.weight_tol), cfg);
}

ActiveSet burn_in(const FeasibleRegion& region, const Objective& obj, const ActiveSet& s0,
                  const SolverConfig& cfg) {
  if (!cfg.curvature_estimate) return s0;
  Runner run(region, obj, cfg, cfg.max_oracle_calls);
  run.start(s0);
  SegmentExit last = SegmentExit::Contracted;
  run_burn_in(run, last);
  return run.active_set();
}

FwSegment fractional_fw(const FeasibleRegion& region, const Objective& obj, const Vector& x0,
                        const SolverConfig& cfg, double g_reference, std::int64_t budget) {
  if (!(g_reference > 0.0)) throw DomainError("g_reference must be positive");
  Runner run(region, obj, cfg, budget);
  run.start(x0);
  run.boundary(g_reference, false);
  const SegmentExit e = run_fw_segment(run, g_reference, cfg.gamma);
  Vector x = run.x();
  return {std::move(x), run.finish(termination_of(e))};
}

RunLog restart_fractional_fw(const FeasibleRegion& region, const Objective& obj, const Vector& x0,
                             const SolverConfig& cfg) {
  Runner run(region, obj, cfg, cfg.max_oracle_calls);
  run.start(x0);
  if (!run.can_evaluate()) return run.finish(Termination::OracleBudget);
  double phi = run.evaluate().report.fw_gap;
  run.boundary(phi, false);
  const double shrink = std::exp(-cfg.gamma);
  while (true) {
    if (!run.evaluated() && !run.can_evaluate()) return run.finish(Termination::OracleBudget);
    const GapEvaluation& ev = run.evaluate();
    const double g = ev.report.fw_gap;
    if (g <= cfg.target_gap) return run.finish(Termination::GapReached);
    if (g > phi * shrink) {
      if (!run.can_step()) return run.finish(Termination::OracleBudget);
      if (run.stalled()) return run.finish(Termination::Stalled);
      run.step(StepType::FW, ev);
    } else {
      phi = g;
      ++run.restart_index();
      run.boundary(phi, false);
    }
  }
}

RunLog vanilla_fw(const FeasibleRegion& region, const Objective& obj, const Vector& x0,
                  const SolverConfig& cfg) {
  Runner run(region, obj, cfg, cfg.max_oracle_calls);
  run.start(x0);
  while (true) {
    if (!run.evaluated() && !run.can_evaluate()) return run.finish(Termination::OracleBudget);
    const GapEvaluation& ev = run.evaluate();
    if (ev.report.fw_gap <= cfg.target_gap) return run.finish(Termination::GapReached);
    if (!run.can_step()) return run.finish(Termination::OracleBudget);
    if (run.stalled()) return run.finish(Termination::Stalled);
    run.step(StepType::FW, ev);
  }
}

RunLog one_shot_large_gamma(const FeasibleRegion& region, const Objective& obj,
                            const ActiveSet& s0, double epsilon, const SolverConfig& cfg) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  SolverConfig local = cfg;
  local.target_gap = epsilon;
  Runner run(region, obj, local, local.max_oracle_calls);
  run.start(s0);
  if (!run.can_evaluate()) return run.finish(Termination::OracleBudget);
  const double w0 = run.evaluate().report.strong_wolfe_gap;
  if (epsilon >= w0) return run.finish(Termination::GapReached);
  const double gamma = std::log(w0 / epsilon) + 0.1;
  run.boundary(w0, false);
  // The segment's own target check uses w <= epsilon; the exit level
  // e^-gamma w0 sits strictly below epsilon.
  const SegmentExit e = run_afw_segment(run, w0, gamma, kNoCap, true);
  return run.finish(termination_of(e));
}

}  // namespace rfw
