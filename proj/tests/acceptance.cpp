// Acceptance harness: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "rfw/algorithms.hpp"
#include "rfw/analysis.hpp"
#include "rfw/experiment.hpp"
#include "rfw/gaps.hpp"
#include "rfw/linesearch.hpp"
#include "support/brute_force.hpp"

using namespace rfw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// --- problems ---------------------------------------------------------------

// Planted 50-dim least squares on an l1 ball whose radius is 95% of the
// unconstrained solution's norm, so the optimum sits on a boundary face.
Experiment quadratic_problem() {
  Dataset d = generate_synthetic(SyntheticKind::Regression, 100, 50, 0.1, 1);
  const double r = 0.95 * least_squares_solution(d).lpNorm<1>();
  auto region = FeasibleRegion::l1_ball(50, r);
  Vertex start = random_extreme_point(region, 1);
  return {Objective::least_squares(std::move(d)), std::move(region), std::move(start), 1};
}

Experiment powered_norm_problem() {
  Dataset d = generate_synthetic(SyntheticKind::Regression, 100, 50, 0.1, 1);
  const double r = 0.5 * least_squares_solution(d).lpNorm<1>();
  auto region = FeasibleRegion::l1_ball(50, r);
  Vertex start = random_extreme_point(region, 1);
  return {Objective::powered_norm(std::move(d), 1.5), std::move(region), std::move(start), 1};
}

Experiment logistic_problem() {
  Dataset d = generate_synthetic(SyntheticKind::Classification, 100, 20, 0.1, 2);
  auto region = FeasibleRegion::l1_ball(20, 2.0);
  Vertex start = random_extreme_point(region, 2);
  return {Objective::logistic(std::move(d)), std::move(region), std::move(start), 2};
}

Experiment simplex_problem() {
  Dataset d = generate_synthetic(SyntheticKind::Regression, 60, 15, 0.1, 3);
  auto region = FeasibleRegion::simplex(15, 1.0);
  Vertex start = random_extreme_point(region, 3);
  return {Objective::least_squares(std::move(d)), std::move(region), std::move(start), 3};
}

Experiment box_problem() {
  Dataset d = generate_synthetic(SyntheticKind::Regression, 60, 15, 0.1, 4);
  auto region = FeasibleRegion::box(Vector::Constant(15, -0.1), Vector::Constant(15, 0.1));
  Vertex start = random_extreme_point(region, 4);
  return {Objective::least_squares(std::move(d)), std::move(region), std::move(start), 4};
}

double f_star(const Experiment& ex) { return reference_optimum(ex, 1e-13, 1000000).f_star; }

double curvature_of(const Experiment& ex) {
  const double d = region_diameter(ex.region);
  return *ex.objective.smoothness() * d * d;
}

std::int64_t calls_to_gap(const RunLog& log, double fs, double target) {
  for (const auto& r : log.records) {
    if (r.f_value - fs <= target) return r.lmo_calls + r.grad_calls;
  }
  return -1;
}

// --- criteria ---------------------------------------------------------------

Outcome restart_contract() {
  std::vector<std::pair<std::string, Experiment>> problems;
  problems.emplace_back("quadratic", quadratic_problem());
  problems.emplace_back("powered_norm", powered_norm_problem());
  problems.emplace_back("logistic", logistic_problem());
  problems.emplace_back("simplex", simplex_problem());
  problems.emplace_back("box", box_problem());
  std::size_t checked = 0;
  for (const auto& [name, ex] : problems) {
    for (double gamma : {0.1, 0.5, 1.0, 2.0}) {
      for (bool burn : {false, true}) {
        SolverConfig cfg;
        cfg.gamma = gamma;
        cfg.target_gap = 1e-9;
        cfg.max_oracle_calls = 20000;
        if (burn) cfg.curvature_estimate = 1e-3 * curvature_of(ex);
        const auto log = scheduled_restarts(ex.region, ex.objective, ex.start, cfg);
        std::vector<RestartBoundary> b;
        for (const auto& rb : log.restart_boundaries) {
          if (!rb.burn_in) b.push_back(rb);
        }
        for (std::size_t k = 1; k < b.size(); ++k, ++checked) {
          const double shrink = std::exp(-gamma);
          if (!(b[k].gap_at_restart <= shrink * b[k - 1].gap_at_restart)) {
            return {false, fmt("%s gamma=%g restart %zu: %.6g > e^-g * %.6g", name.c_str(), gamma,
                               k, b[k].gap_at_restart, b[k - 1].gap_at_restart)};
          }
          const double cumulative = std::exp(-gamma * double(k)) * b[0].gap_at_restart;
          if (!(b[k].gap_at_restart <= cumulative * (1 + 1e-12))) {
            return {false, fmt("%s gamma=%g restart %zu exceeds e^-gk w0", name.c_str(), gamma, k)};
          }
        }
      }
    }
  }
  return {checked > 0, fmt("%zu restart boundaries on 5 problems x 4 gammas", checked)};
}

Outcome linear_rate() {
  const Experiment ex = quadratic_problem();
  const double fs = f_star(ex);
  SolverConfig cfg;
  cfg.target_gap = 1e-10;
  cfg.max_oracle_calls = 50000;
  const auto log = scheduled_restarts(ex.region, ex.objective, ex.start, cfg);
  const double gap = log.final_f - fs;
  const auto fit = fit_rate(log, fs, RateModel::LogLinear);
  SolverConfig vcfg;
  vcfg.target_gap = 1e-300;
  vcfg.max_oracle_calls = 50000;
  const auto vanilla = vanilla_fw(ex.region, ex.objective, ex.start.point, vcfg);
  const double vgap = vanilla.final_f - fs;
  const bool ok = gap <= 1e-10 && log.counters.total() <= 50000 && fit.r_squared >= 0.9 && vgap > 1e-6;
  return {ok, fmt("restarts gap %.3g in %lld calls, tail R^2 %.4f; vanilla gap %.3g at 5e4 calls", gap,
                  (long long)log.counters.total(), fit.r_squared, vgap)};
}

Outcome interpolated_regime() {
  const Experiment ex = powered_norm_problem();
  const double fs = f_star(ex);
  SolverConfig cfg;
  cfg.target_gap = 1e-300;
  cfg.max_oracle_calls = 100000;
  cfg.line_search = LineSearchKind::Adaptive;
  const auto restarted = scheduled_restarts(ex.region, ex.objective, ex.start, cfg);
  const auto vanilla = vanilla_fw(ex.region, ex.objective, ex.start.point, cfg);
  const auto a = calls_to_gap(restarted, fs, 1e-6);
  const auto b = calls_to_gap(vanilla, fs, 1e-3);
  const bool ok = a > 0 && b > 0 && double(a) <= 0.25 * double(b);
  return {ok, fmt("restarts reach 1e-6 in %lld calls, vanilla reaches 1e-3 in %lld", (long long)a,
                  (long long)b)};
}

Outcome gamma_robustness() {
  const Experiment ex = quadratic_problem();
  const double fs = f_star(ex);
  // Gaps below a few dozen ulps of f* are rounding noise, not progress.
  const double floor = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(fs));
  double lo = INFINITY, hi = 0.0;
  std::string detail = "final gaps:";
  for (double gamma : {0.1, 0.5, 1.0, 2.0}) {
    SolverConfig cfg;
    cfg.gamma = gamma;
    cfg.target_gap = 1e-300;
    cfg.max_oracle_calls = 20000;
    const auto log = scheduled_restarts(ex.region, ex.objective, ex.start, cfg);
    const double g = std::max(log.final_f - fs, floor);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
    detail += fmt(" %g:%.3g", gamma, log.final_f - fs);
  }
  detail += fmt(" (floor %.3g, ratio %.3g)", floor, hi / lo);
  return {hi <= 10 * lo, detail};
}

Outcome uniformly_convex_sets() {
  auto run = [](double p) {
    Vector c = Vector::LinSpaced(50, 0.1, 1.0);
    c *= 1.1 / std::pow(c.array().abs().pow(p).sum(), 1 / p);
    auto region = FeasibleRegion::lp_ball(50, 1.0, p);
    Vertex start = random_extreme_point(region, 1);
    Experiment ex{Objective::squared_distance(c), std::move(region), std::move(start), 1};
    const double fs = reference_optimum(ex, 1e-14, 1000000).f_star;
    SolverConfig cfg;
    cfg.target_gap = 1e-10;
    cfg.max_oracle_calls = 200000;
    const auto log = vanilla_fw(ex.region, ex.objective, ex.start.point, cfg);
    return std::make_pair(fit_rate(log, fs, RateModel::LogLinear), fit_rate(log, fs, RateModel::LogLog));
  };
  const auto strong = run(1.5).first;
  const auto uniform = run(2.5).second;
  const bool ok = strong.r_squared >= 0.9 && uniform.slope <= -1.5;
  return {ok, fmt("p=1.5 LogLinear R^2 %.4f; p=2.5 LogLog slope %.3g", strong.r_squared, uniform.slope)};
}

Outcome gap_correctness() {
  std::mt19937_64 rng(6);
  double worst_match = 0.0, worst_bound = -INFINITY;
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + k % 3;
    const FeasibleRegion region =
        k % 3 == 0   ? FeasibleRegion::l1_ball(n, 1.5)
        : k % 3 == 1 ? FeasibleRegion::simplex(n, 1.0)
                     : FeasibleRegion::box(Vector::Constant(n, -1.0), Vector::LinSpaced(n, 0.5, 1.5));
    const auto obj = testing::random_quadratic(rng, n, 2.0);

    const ActiveSet s = testing::random_active_set(region, rng, n + 1);
    OracleCounters c;
    const auto r = compute_gaps(region, obj, s.reconstruct(), &s, c);
    worst_match = std::max(
        worst_match, std::abs(r.report.strong_wolfe_gap -
                              testing::double_enumeration_wolfe(region, r.gradient, s)));

    SolverConfig cfg;
    cfg.max_oracle_calls = 2 * (1 + static_cast<std::int64_t>(rng() % 12));
    const auto vs = region.vertices();
    const auto seg = fractional_afw(region, obj, ActiveSet::singleton(vs[rng() % vs.size()]), cfg,
                                    1e3, cfg.max_oracle_calls);
    const Vector x = seg.active_set.reconstruct();
    const double w = compute_gaps(region, obj, x, &seg.active_set, c).report.strong_wolfe_gap;
    worst_bound = std::max(worst_bound, testing::brute_force_strong_wolfe(region, obj, x) - w);
  }
  const bool ok = worst_match <= 1e-10 && worst_bound <= 1e-10;
  return {ok, fmt("max |w - enumeration| %.3g, max w_brute - w(x,S) %.3g", worst_match, worst_bound)};
}

Outcome lmo_certificates() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checks = 0, failures = 0;
  while (checks < 10000) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const std::vector<FeasibleRegion> regions = {
        FeasibleRegion::l1_ball(n, 2.0), FeasibleRegion::simplex(n, 1.5),
        FeasibleRegion::box(Vector::LinSpaced(n, -1.0, -0.2), Vector::LinSpaced(n, 0.3, 2.0)),
        FeasibleRegion::lp_ball(n, 1.0, 1.5), FeasibleRegion::lp_ball(n, 2.0, 2.0),
        FeasibleRegion::lp_ball(n, 0.7, 3.0)};
    const auto& region = regions[rng() % regions.size()];
    const Vector c = testing::random_vector(rng, n);
    const Vector v = lmo(region, c).point;
    // A random feasible point as a convex combination of LMO outputs.
    Vector z = lmo(region, testing::random_vector(rng, n)).point;
    for (int j = 0; j < 4; ++j) {
      const double t = u(rng);
      z = (1 - t) * z + t * lmo(region, testing::random_vector(rng, n)).point;
    }
    failures += !region.contains(v, 1e-10) || c.dot(v) > c.dot(z) + 1e-10;
    ++checks;
  }
  return {failures == 0, fmt("%d checks, %d failures", checks, failures)};
}

Outcome adaptive_line_search() {
  std::vector<Experiment> problems;
  problems.push_back(quadratic_problem());
  problems.push_back(logistic_problem());
  problems.push_back(simplex_problem());
  int steps = 0, l_violations = 0, model_violations = 0;
  for (const auto& ex : problems) {
    const double L = *ex.objective.smoothness();
    for (double l0 : {1e-3, 1.0, 1e3}) {
      SolverConfig cfg;
      cfg.line_search = LineSearchKind::Adaptive;
      cfg.adaptive.initial_l = l0;
      cfg.max_oracle_calls = 5000;
      cfg.target_gap = 1e-10;
      const double cap = std::max(cfg.adaptive.tau * L, l0) + 1e-9;
      cfg.on_step = [&](const StepTrace& t) {
        ++steps;
        l_violations += t.lipschitz > cap;
        model_violations += !sufficient_decrease(t.f_after, t.f_before, t.slope,
                                                 t.direction_norm_sq, t.eta, t.lipschitz);
      };
      scheduled_restarts(ex.region, ex.objective, ex.start, cfg);
      vanilla_fw(ex.region, ex.objective, ex.start.point, cfg);
    }
  }
  const bool ok = steps > 0 && l_violations == 0 && model_violations == 0;
  return {ok, fmt("%d accepted steps, %d L-bound violations, %d sufficient-decrease violations", steps,
                  l_violations, model_violations)};
}

Vector central_difference(const Objective& f, const Vector& w, double h) {
  Vector g(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    Vector a = w, b = w;
    a(i) += h;
    b(i) -= h;
    g(i) = (f.value(a) - f.value(b)) / (2 * h);
  }
  return g;
}

Outcome gradient_checks() {
  std::mt19937_64 rng(9);
  const Dataset reg = generate_synthetic(SyntheticKind::Regression, 30, 6, 0.5, 3);
  const Dataset cls = generate_synthetic(SyntheticKind::Classification, 30, 6, 0.5, 3);
  // Square system: residuals can be driven to zero all at once.
  const Dataset square = generate_synthetic(SyntheticKind::Regression, 8, 8, 0.0, 4);
  const Objective ls = Objective::least_squares(reg);
  const Objective pn = Objective::powered_norm(square, 1.5);
  const Objective lg = Objective::logistic(cls);
  const Eigen::MatrixXd X = square.X;
  double worst = 0.0;
  int points = 0;
  auto check = [&](const Objective& f, const Vector& w, double h) {
    const Vector g = f.gradient(w);
    const double err = (central_difference(f, w, h) - g).norm() / (g.norm() + 1e-5);
    worst = std::max(worst, err);
    ++points;
  };
  for (int k = 0; k < 1000; ++k) check(ls, testing::random_vector(rng, 6), 1e-6);
  for (int k = 0; k < 1000; ++k) check(lg, testing::random_vector(rng, 6), 1e-6);
  for (int k = 0; k < 1000; ++k) {
    if (k % 2 == 0) {
      check(pn, testing::random_vector(rng, 8), 1e-6);
    } else {
      Vector target = square.y + testing::random_vector(rng, 8, 1e-3);
      target(0) = square.y(0);
      const Vector w = X.colPivHouseholderQr().solve(target);
      // The difference step must stay well inside the smallest nonzero
      // residual, where |r|^1.5 is smooth; the exact zero is symmetric.
      const Vector r = (X * w - square.y).cwiseAbs();
      double r_min = 1e-3;
      for (double ri : r) {
        if (ri > 1e-12) r_min = std::min(r_min, ri);
      }
      check(pn, w, std::min(1e-7, 1e-2 * r_min / X.cwiseAbs().rowwise().sum().maxCoeff()));
    }
  }
  return {worst < 1e-5, fmt("%d points, worst relative error %.3g", points, worst)};
}

Outcome recurrence_lemma() {
  int cases = 0, failed = 0;
  std::string first;
  for (double beta : {0.25, 0.5, 0.75, 1.0}) {
    for (double m : {0.1, 1.0, 10.0}) {
      for (double h0 : {0.5, 1.0, 100.0}) {
        const auto r = recurrence_check(h0, m, beta, 100000);
        ++cases;
        if (!r.ok) {
          if (failed++ == 0) {
            first = fmt("; first: beta=%g m=%g h0=%g violates at t=%lld", beta, m, h0,
                        (long long)r.first_violation);
          }
        }
      }
    }
  }
  return {failed == 0, fmt("%d/%d grid cases ok%s", cases - failed, cases, first.c_str())};
}

Outcome bound_validity() {
  const Experiment ex = quadratic_problem();
  SolverConfig cfg;
  cfg.target_gap = 1e-10;
  cfg.max_oracle_calls = 50000;
  const auto log = scheduled_restarts(ex.region, ex.objective, ex.start, cfg);
  const auto chk = check_restart_bound(log, cfg.gamma, 2.0, curvature_of(ex));
  std::size_t bad = 0;
  double worst = 0.0;
  for (const auto& row : chk.rows) {
    if (row.observed > row.bound) {
      ++bad;
      worst = std::max(worst, row.observed / row.bound);
    }
  }
  return {chk.ok, fmt("mu %.3g from first restart; %zu/%zu later boundaries exceed the bound "
                      "(worst ratio %.3g)",
                      chk.mu, bad, chk.rows.size() - 1, worst)};
}

Outcome one_shot_mode() {
  const Experiment ex = quadratic_problem();
  const double fs = f_star(ex);
  SolverConfig cfg;
  cfg.max_oracle_calls = 10000000;
  const auto log =
      one_shot_large_gamma(ex.region, ex.objective, ActiveSet::singleton(ex.start), 1e-4, cfg);
  std::int64_t away = 0;
  for (const auto& r : log.records) {
    away += r.step_type == StepType::Away || r.step_type == StepType::Drop;
  }
  const double gap = log.final_f - fs;
  return {gap <= 1e-4 && away == 0,
          fmt("f - f* = %.3g after %lld iterations, %lld away steps", gap,
              (long long)log.iterations, (long long)away)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "rfw_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  unsetenv("FW_OUT_DIR");
  const std::string problem =
      "seed = 5\nout_dir = out\n[problem]\nkind = least_squares\nn_samples = 100\ndim = 50\n"
      "[region]\nkind = l1_ball\n";
  std::ofstream(dir / "solve.ini") << problem
                                   << "[solver]\nname = scheduled_restarts\ntarget_gap = 1e-9\n";
  std::ofstream(dir / "compare.ini")
      << problem << "[solver]\nname = vanilla_fw, scheduled_restarts\nmax_oracle_calls = 4000\n";
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = dir / "out";
    fs::remove_all(out);
    cmd_solve(dir / "solve.ini");
    const std::string a = slurp(out / "run.csv");
    fs::remove_all(out);
    cmd_solve(dir / "solve.ini");
    ok = ok && !a.empty() && a == slurp(out / "run.csv");
    fs::remove_all(out);
    cmd_compare(dir / "compare.ini");
    const std::string b = slurp(out / "scheduled_restarts" / "run.csv") + slurp(out / "compare.csv");
    fs::remove_all(out);
    cmd_compare(dir / "compare.ini");
    ok = ok && !b.empty() &&
         b == slurp(out / "scheduled_restarts" / "run.csv") + slurp(out / "compare.csv");
  }
  fs::remove_all(dir);
  return {ok, "solve and compare reruns produce identical CSV bytes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"restart contract", restart_contract},
      {"linear rate, r=2", linear_rate},
      {"interpolated regime", interpolated_regime},
      {"gamma robustness", gamma_robustness},
      {"uniformly convex sets", uniformly_convex_sets},
      {"gaps vs brute force", gap_correctness},
      {"LMO certificates", lmo_certificates},
      {"adaptive line search", adaptive_line_search},
      {"gradient checks", gradient_checks},
      {"recurrence lemma", recurrence_lemma},
      {"theoretical bound validity", bound_validity},
      {"one-shot large gamma", one_shot_mode},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
