#include "rfw/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "rfw/analysis.hpp"
#include "rfw/gaps.hpp"

namespace rfw {

namespace {

std::filesystem::path g_config_dir;  // set by the commands; resolves relative data paths

Objective make_objective(const std::string& kind, Dataset data, Config& cfg) {
  if (kind == "least_squares") return Objective::least_squares(std::move(data));
  if (kind == "powered_norm") {
    return Objective::powered_norm(std::move(data), cfg.get_double("problem.alpha", 1.5));
  }
  if (kind == "logistic") return Objective::logistic(std::move(data));
  throw ParseError("problem.kind: unknown objective '" + kind + "'", cfg.line_of("problem.kind"));
}

double lp_norm(const Vector& w, double p) {
  if (std::isinf(p)) return w.lpNorm<Eigen::Infinity>();
  if (p == 1.0) return w.lpNorm<1>();
  return std::pow(w.array().abs().pow(p).sum(), 1.0 / p);
}

std::filesystem::path output_dir(Config& cfg) {
  std::string dir;
  if (cfg.has("out_dir") && cfg.has("output.out_dir")) {
    throw ParseError("out_dir given both at top level and in [output]", cfg.line_of("out_dir"));
  }
  dir = cfg.has("output.out_dir") ? cfg.get_string("output.out_dir", "out")
                                  : cfg.get_string("out_dir", "out");
  if (const char* env = std::getenv("FW_OUT_DIR"); env != nullptr && *env != '\0') dir = env;
  std::filesystem::path p(dir);
  if (p.is_relative() && !g_config_dir.empty() && !std::getenv("FW_OUT_DIR")) p = g_config_dir / p;
  return p;
}

nlohmann::ordered_json real_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json summarize(const RunLog& log, double f_star, const std::string& solver) {
  nlohmann::ordered_json j;
  j["solver"] = solver;
  j["termination"] = to_string(log.termination);
  j["final_f"] = real_or_null(log.final_f);
  j["f_star"] = real_or_null(f_star);
  j["final_primal_gap"] = real_or_null(log.final_f - f_star);
  j["final_fw_gap"] = real_or_null(log.final_fw_gap);
  j["final_strong_wolfe_gap"] = real_or_null(log.final_strong_wolfe_gap);
  j["iterations"] = log.iterations;
  j["lmo_calls"] = log.counters.lmo_calls;
  j["grad_calls"] = log.counters.grad_calls;
  j["oracle_calls"] = log.counters.total();
  j["restarts"] = log.restart_boundaries.size();
  std::int64_t fw = 0, away = 0, drop = 0;
  for (const auto& r : log.records) {
    fw += r.step_type == StepType::FW;
    away += r.step_type == StepType::Away;
    drop += r.step_type == StepType::Drop;
  }
  j["fw_steps"] = fw;
  j["away_steps"] = away;
  j["drop_steps"] = drop;
  if (log.final_active_set) j["final_active_set_size"] = log.final_active_set->size();
  return j;
}

struct CommonOutput {
  std::filesystem::path out_dir;
  double reference_target = 1e-13;
  std::int64_t reference_budget = 1000000;
};

CommonOutput read_common(Config& cfg) {
  CommonOutput o;
  o.out_dir = output_dir(cfg);
  o.reference_target = cfg.get_double("solver.reference_target_gap", o.reference_target);
  o.reference_budget = cfg.get_int("solver.reference_budget", o.reference_budget);
  return o;
}

int report_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return 1;
}

}  // namespace

Experiment build_experiment(Config& cfg) {
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  const std::string kind = cfg.get_string("problem.kind", "least_squares");
  const std::string source = cfg.get_string("problem.data", "synthetic");

  Dataset data;
  if (source == "synthetic") {
    const auto n = cfg.get_int("problem.n_samples", 100);
    const auto dim = cfg.get_int("problem.dim", 50);
    const double noise = cfg.get_double("problem.noise", 0.1);
    if (n < 1 || dim < 1) {
      throw ParseError("problem.n_samples and problem.dim must be positive",
                       cfg.line_of("problem.dim"));
    }
    const auto sk = kind == "logistic" ? SyntheticKind::Classification : SyntheticKind::Regression;
    data = generate_synthetic(sk, int(n), int(dim), noise, seed);
  } else {
    std::filesystem::path p(source);
    if (p.is_relative() && !g_config_dir.empty()) p = g_config_dir / p;
    data = load_csv(p);
  }
  Objective obj = make_objective(kind, data, cfg);

  const std::string rkind = cfg.get_string("region.kind", "l1_ball");
  const int dim = int(data.dim());
  const double p = rkind == "lp_ball" ? cfg.get_double("region.p", 2.0) : 1.0;
  double radius = 0.0;
  if (cfg.has("region.radius")) {
    radius = cfg.get_double("region.radius", 1.0);
  } else if (rkind == "simplex") {
    radius = 1.0;
  } else {
    // Put the constrained optimum on the boundary: shrink the ball below the
    // unconstrained least-squares fit.
    const double fraction = cfg.get_double("region.scale_to_boundary", 0.5);
    const Vector w = least_squares_solution(data);
    const double norm = rkind == "box" ? w.lpNorm<Eigen::Infinity>()
                                       : lp_norm(w, rkind == "lp_ball" ? p : 1.0);
    radius = fraction * norm;
    if (!(radius > 0.0)) {
      throw ParseError("region radius from scale_to_boundary is zero; set region.radius",
                       cfg.line_of("region.scale_to_boundary"));
    }
    cfg.get_double("region.radius", radius);  // echo the effective radius
  }

  std::optional<FeasibleRegion> region;
  if (rkind == "l1_ball") {
    region = FeasibleRegion::l1_ball(dim, radius);
  } else if (rkind == "lp_ball") {
    region = FeasibleRegion::lp_ball(dim, radius, p);
  } else if (rkind == "simplex") {
    region = FeasibleRegion::simplex(dim, radius);
  } else if (rkind == "box") {
    region = FeasibleRegion::box(Vector::Constant(dim, -radius), Vector::Constant(dim, radius));
  } else {
    throw ParseError("region.kind: unknown region '" + rkind + "'", cfg.line_of("region.kind"));
  }
  Vertex start = random_extreme_point(*region, seed);
  return Experiment{std::move(obj), std::move(*region), std::move(start), seed};
}

std::vector<SolverSpec> build_solvers(Config& cfg, const Experiment& ex, bool allow_lists) {
  const auto names = cfg.get_list("solver.name", {"scheduled_restarts"});
  const auto gammas = cfg.get_double_list("solver.gamma", {0.5});
  if (!allow_lists && (names.size() > 1 || gammas.size() > 1)) {
    throw ParseError("solve runs a single solver; use compare for lists",
                     cfg.line_of(names.size() > 1 ? "solver.name" : "solver.gamma"));
  }
  for (const auto& n : names) {
    if (std::find(solver_names().begin(), solver_names().end(), n) == solver_names().end()) {
      throw ParseError("solver.name: unknown solver '" + n + "'", cfg.line_of("solver.name"));
    }
  }

  SolverConfig base;
  const std::string ls = cfg.get_string("solver.line_search", "auto");
  if (ls != "auto") {
    try {
      base.line_search = line_search_from_string(ls);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), cfg.line_of("solver.line_search"));
    }
  }
  base.target_gap = cfg.get_double("solver.target_gap", 1e-8);
  base.max_oracle_calls = cfg.get_int("solver.max_oracle_calls", 100000);
  base.adaptive.tau = cfg.get_double("solver.tau", base.adaptive.tau);
  base.adaptive.xi = cfg.get_double("solver.xi", base.adaptive.xi);
  base.adaptive.initial_l = cfg.get_double("solver.initial_l", base.adaptive.initial_l);
  base.weight_tol = cfg.get_double("solver.weight_tol", base.weight_tol);
  base.seed = ex.seed;
  if (cfg.has("solver.curvature_estimate")) {
    const std::string c = cfg.get_string("solver.curvature_estimate", "");
    if (c == "auto") {
      auto l = ex.objective.smoothness();
      if (!l) {
        throw ParseError("solver.curvature_estimate = auto needs a smooth objective",
                         cfg.line_of("solver.curvature_estimate"));
      }
      const double d = region_diameter(ex.region);
      base.curvature_estimate = *l * d * d;
    } else {
      base.curvature_estimate = cfg.get_double("solver.curvature_estimate", 0.0);
    }
  }
  double epsilon = 1e-4;
  if (std::find(names.begin(), names.end(), "one_shot_large_gamma") != names.end()) {
    epsilon = cfg.get_double("solver.epsilon", epsilon);
  }

  std::vector<SolverSpec> out;
  for (const auto& n : names) {
    const bool uses_gamma = n != "vanilla_fw" && n != "one_shot_large_gamma";
    const std::size_t count = uses_gamma ? gammas.size() : 1;
    for (std::size_t i = 0; i < count; ++i) {
      SolverSpec s;
      s.name = n;
      s.config = base;
      s.config.gamma = gammas[i];
      s.epsilon = epsilon;
      s.label = n;
      if (uses_gamma && gammas.size() > 1) s.label += "_gamma" + format_real(gammas[i]);
      try {
        s.config.validate();
      } catch (const DomainError& e) {
        throw ParseError(e.what(), 0);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

RunLog run_solver(const Experiment& ex, const SolverSpec& spec) {
  const auto& region = ex.region;
  const auto& obj = ex.objective;
  const SolverConfig& cfg = spec.config;
  const ActiveSet s0 = ActiveSet::singleton(ex.start, cfg.weight_tol);
  if (spec.name == "vanilla_fw") return vanilla_fw(region, obj, ex.start.point, cfg);
  if (spec.name == "scheduled_restarts") return scheduled_restarts(region, obj, s0, cfg);
  if (spec.name == "restart_fractional_fw") {
    return restart_fractional_fw(region, obj, ex.start.point, cfg);
  }
  if (spec.name == "one_shot_large_gamma") {
    return one_shot_large_gamma(region, obj, s0, spec.epsilon, cfg);
  }
  OracleCounters probe;
  if (spec.name == "fractional_afw") {
    const double w0 = compute_gaps(region, obj, ex.start.point, &s0, probe).report.strong_wolfe_gap;
    if (!(w0 > 0.0)) return vanilla_fw(region, obj, ex.start.point, cfg);
    return fractional_afw(region, obj, s0, cfg, w0, cfg.max_oracle_calls).log;
  }
  if (spec.name == "fractional_fw") {
    const double g0 = compute_gaps(region, obj, ex.start.point, nullptr, probe).report.fw_gap;
    if (!(g0 > 0.0)) return vanilla_fw(region, obj, ex.start.point, cfg);
    return fractional_fw(region, obj, ex.start.point, cfg, g0, cfg.max_oracle_calls).log;
  }
  throw DomainError("unknown solver '" + spec.name + "'");
}

Reference reference_optimum(const Experiment& ex, double target_gap, std::int64_t budget) {
  SolverConfig cfg;
  cfg.target_gap = target_gap;
  cfg.max_oracle_calls = budget;
  Reference ref;
  if (ex.region.is_polytope()) {
    ref.log = scheduled_restarts(ex.region, ex.objective, ActiveSet::singleton(ex.start), cfg);
  } else {
    ref.log = vanilla_fw(ex.region, ex.objective, ex.start.point, cfg);
  }
  ref.f_star = ref.log.final_f;
  for (const auto& r : ref.log.records) ref.f_star = std::min(ref.f_star, r.f_value);
  return ref;
}

// ---------------------------------------------------------------------------

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string run_csv(const RunLog& log, double f_star) {
  std::string out = kRunCsvHeader;
  out += '\n';
  for (const auto& r : log.records) {
    out += std::to_string(r.t);
    out += ',';
    out += std::to_string(r.restart_index);
    out += ',';
    out += to_string(r.step_type);
    out += ',';
    out += format_real(r.eta);
    out += ',';
    out += format_real(r.f_value);
    out += ',';
    out += format_real(r.f_value - f_star);
    out += ',';
    out += format_real(r.fw_gap);
    out += ',';
    out += format_real(r.strong_wolfe_gap);
    out += ',';
    out += std::to_string(r.active_set_size);
    out += ',';
    out += std::to_string(r.lmo_calls);
    out += ',';
    out += std::to_string(r.grad_calls);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

CsvSeries read_run_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty run file " + path.string(), 1);
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  auto col = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) return std::nullopt;
    return std::size_t(it - cols.begin());
  };
  const auto ct = col("t");
  const auto cg = col("primal_gap");
  if (!ct || !cg) throw ParseError("run file needs columns t and primal_gap", 1);
  const auto cw = col("strong_wolfe_gap");
  const auto cl = col("lmo_calls");
  const auto cgr = col("grad_calls");

  CsvSeries s;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) f.push_back(c);
    if (f.size() != cols.size()) throw ParseError("column count mismatch", line_no);
    auto num = [&](std::size_t i) {
      char* end = nullptr;
      const double v = std::strtod(f[i].c_str(), &end);
      if (end == f[i].c_str()) throw ParseError("bad number '" + f[i] + "'", line_no);
      return v;
    };
    s.t.push_back(num(*ct));
    s.primal_gap.push_back(num(*cg));
    s.strong_wolfe_gap.push_back(cw ? num(*cw) : std::nan(""));
    s.oracle_calls.push_back(cl && cgr ? num(*cl) + num(*cgr) : std::nan(""));
  }
  return s;
}

std::string compare_csv(const std::vector<std::string>& labels, const std::vector<RunLog>& logs,
                        double f_star) {
  std::set<std::int64_t> axis;
  for (const auto& log : logs) {
    for (const auto& r : log.records) axis.insert(r.lmo_calls + r.grad_calls);
  }
  std::string out = "oracle_calls";
  for (const auto& l : labels) out += ",primal_gap:" + l;
  for (const auto& l : labels) out += ",strong_wolfe_gap:" + l;
  out += '\n';

  std::vector<std::size_t> cursor(logs.size(), 0);
  for (const std::int64_t calls : axis) {
    std::vector<const IterationRecord*> cur(logs.size(), nullptr);
    for (std::size_t v = 0; v < logs.size(); ++v) {
      const auto& recs = logs[v].records;
      while (cursor[v] < recs.size() &&
             recs[cursor[v]].lmo_calls + recs[cursor[v]].grad_calls <= calls) {
        ++cursor[v];
      }
      if (cursor[v] > 0) cur[v] = &recs[cursor[v] - 1];
    }
    out += std::to_string(calls);
    for (const auto* r : cur) out += "," + (r ? format_real(r->f_value - f_star) : std::string());
    for (const auto* r : cur) out += "," + (r ? format_real(r->strong_wolfe_gap) : std::string());
    out += '\n';
  }
  return out;
}

int exit_code_for(Termination t) {
  switch (t) {
    case Termination::GapReached: return 0;
    case Termination::OracleBudget: return 2;
    case Termination::Stalled: return 3;
  }
  return 1;
}

// ---------------------------------------------------------------------------

int cmd_solve(const std::filesystem::path& config_path) {
  try {
    Config cfg = Config::load(config_path);
    g_config_dir = config_path.parent_path();
    Experiment ex = build_experiment(cfg);
    auto specs = build_solvers(cfg, ex, false);
    CommonOutput common = read_common(cfg);
    cfg.reject_unused();

    const Reference ref = reference_optimum(ex, common.reference_target, common.reference_budget);
    const RunLog log = run_solver(ex, specs.front());

    write_text(common.out_dir / "run.csv", run_csv(log, ref.f_star));
    nlohmann::ordered_json summary = summarize(log, ref.f_star, specs.front().label);
    summary["seed"] = ex.seed;
    summary["config"] = cfg.used();
    write_text(common.out_dir / "summary.json", summary.dump(2) + "\n");
    return exit_code_for(log.termination);
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_compare(const std::filesystem::path& config_path) {
  try {
    Config cfg = Config::load(config_path);
    g_config_dir = config_path.parent_path();
    Experiment ex = build_experiment(cfg);
    auto specs = build_solvers(cfg, ex, true);
    CommonOutput common = read_common(cfg);
    cfg.reject_unused();
    if (specs.size() < 2) {
      throw ParseError("compare needs at least two solver variants", cfg.line_of("solver.name"));
    }

    const Reference ref = reference_optimum(ex, common.reference_target, common.reference_budget);

    std::vector<std::future<RunLog>> jobs;
    for (const auto& s : specs) {
      jobs.push_back(std::async(std::launch::async, [&ex, &s] { return run_solver(ex, s); }));
    }
    std::vector<RunLog> logs;
    for (auto& j : jobs) logs.push_back(j.get());

    std::vector<std::string> labels;
    nlohmann::ordered_json summary;
    summary["f_star"] = ref.f_star;
    summary["seed"] = ex.seed;
    summary["variants"] = nlohmann::ordered_json::array();
    int code = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      labels.push_back(specs[i].label);
      write_text(common.out_dir / specs[i].label / "run.csv", run_csv(logs[i], ref.f_star));
      auto s = summarize(logs[i], ref.f_star, specs[i].label);
      s["gamma"] = specs[i].config.gamma;
      summary["variants"].push_back(s);
      code = std::max(code, exit_code_for(logs[i].termination));
    }
    summary["config"] = cfg.used();
    write_text(common.out_dir / "compare.csv", compare_csv(labels, logs, ref.f_star));
    write_text(common.out_dir / "summary.json", summary.dump(2) + "\n");
    return code;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

int cmd_check_rates(const std::filesystem::path& config_path) {
  try {
    Config cfg = Config::load(config_path);
    g_config_dir = config_path.parent_path();

    nlohmann::ordered_json report;
    bool passed = true;
    bool any_input = false;

    // Empirical fit on a stored run or on a fresh solve.
    std::optional<CsvSeries> series;
    std::optional<RunLog> log;
    std::optional<Experiment> ex;
    std::vector<SolverSpec> specs;
    if (cfg.has("rates.run_csv")) {
      std::filesystem::path p(cfg.get_string("rates.run_csv", ""));
      if (p.is_relative()) p = g_config_dir / p;
      series = read_run_csv(p);
    } else if (cfg.has("problem.kind")) {
      ex.emplace(build_experiment(cfg));
      specs = build_solvers(cfg, *ex, false);
    }

    std::optional<std::string> model_name;
    double tail = 0.5;
    std::optional<double> min_r2, max_slope;
    if (series || ex) {
      model_name = cfg.get_string("rates.model", "loglinear");
      tail = cfg.get_double("rates.tail_fraction", 0.5);
      min_r2 = cfg.get_optional_double("rates.min_r_squared");
      max_slope = cfg.get_optional_double("rates.max_slope");
      if (*model_name != "loglinear" && *model_name != "loglog") {
        throw ParseError("rates.model must be loglinear or loglog", cfg.line_of("rates.model"));
      }
    }

    const bool check_bound = cfg.get_bool("rates.check_bound", false);
    std::optional<double> bound_curvature;
    double bound_r = 2.0;
    if (check_bound) {
      if (!ex) throw ParseError("rates.check_bound needs a [problem] to run", cfg.line_of("rates.check_bound"));
      bound_r = cfg.get_double("rates.r", 2.0);
      bound_curvature = cfg.get_optional_double("rates.curvature");
    }

    const auto betas = cfg.get_double_list("rates.recurrence_beta", {});
    std::vector<double> ms, h0s;
    std::int64_t t_max = 10000;
    if (!betas.empty()) {
      ms = cfg.get_double_list("rates.recurrence_m", {1.0});
      h0s = cfg.get_double_list("rates.recurrence_h0", {1.0});
      t_max = cfg.get_int("rates.recurrence_t_max", t_max);
    }
    CommonOutput common = read_common(cfg);
    cfg.reject_unused();

    double f_star = 0.0;
    if (ex) {
      const Reference ref = reference_optimum(*ex, common.reference_target, common.reference_budget);
      f_star = ref.f_star;
      log = run_solver(*ex, specs.front());
      write_text(common.out_dir / "run.csv", run_csv(*log, f_star));
      report["f_star"] = f_star;
      report["termination"] = to_string(log->termination);
    }

    if (model_name) {
      any_input = true;
      const RateModel model = *model_name == "loglog" ? RateModel::LogLog : RateModel::LogLinear;
      const RateFit fit = series ? fit_rate(series->t, series->primal_gap, model, tail)
                                 : fit_rate(*log, f_star, model, tail);
      nlohmann::ordered_json j;
      j["model"] = *model_name;
      j["tail_fraction"] = tail;
      j["slope"] = fit.slope;
      j["intercept"] = fit.intercept;
      j["r_squared"] = fit.r_squared;
      j["points"] = fit.points;
      if (min_r2) {
        const bool ok = fit.r_squared >= *min_r2;
        j["assert_min_r_squared"] = {{"threshold", *min_r2}, {"passed", ok}};
        passed = passed && ok;
      }
      if (max_slope) {
        const bool ok = fit.slope <= *max_slope;
        j["assert_max_slope"] = {{"threshold", *max_slope}, {"passed", ok}};
        passed = passed && ok;
      }
      report["fit"] = j;
    }

    if (check_bound) {
      any_input = true;
      double curvature = 0.0;
      if (bound_curvature) {
        curvature = *bound_curvature;
      } else {
        auto l = ex->objective.smoothness();
        if (!l) throw ParseError("rates.curvature required for a non-smooth objective", 0);
        const double d = region_diameter(ex->region);
        curvature = *l * d * d;
      }
      const RestartBoundCheck chk = check_restart_bound(*log, specs.front().config.gamma, bound_r, curvature);
      nlohmann::ordered_json j;
      j["r"] = bound_r;
      j["curvature"] = curvature;
      j["mu"] = chk.mu;
      j["w0"] = chk.w0;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : chk.rows) {
        j["rows"].push_back({{"restart", row.restart},
                             {"t_tilde", row.t_tilde},
                             {"observed", row.observed},
                             {"bound", row.bound}});
      }
      j["passed"] = chk.ok;
      passed = passed && chk.ok;
      report["bound"] = j;
    }

    if (!betas.empty()) {
      any_input = true;
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (double beta : betas) {
        for (double m : ms) {
          for (double h0 : h0s) {
            const RecurrenceResult r = recurrence_check(h0, m, beta, t_max);
            arr.push_back({{"beta", beta},
                           {"m", m},
                           {"h0", h0},
                           {"t_max", t_max},
                           {"k", r.k},
                           {"c_prime", r.c_prime},
                           {"c", r.c},
                           {"ok", r.ok},
                           {"first_violation", r.first_violation}});
            passed = passed && r.ok;
          }
        }
      }
      report["recurrence"] = arr;
    }

    if (!any_input) {
      throw ParseError("nothing to check: give rates.run_csv, a [problem], or rates.recurrence_beta", 0);
    }
    report["passed"] = passed;
    report["config"] = cfg.used();
    write_text(common.out_dir / "rates.json", report.dump(2) + "\n");
    return passed ? 0 : 2;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

}  // namespace rfw
