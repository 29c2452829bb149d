#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rfw/algorithms.hpp"
#include "rfw/config.hpp"

namespace rfw {

/// A configured problem instance: data, objective, feasible region and the
/// common starting vertex of every solver run on it.
struct Experiment {
  Objective objective;
  FeasibleRegion region;
  Vertex start;
  std::uint64_t seed = 0;
};

/// Reads the [problem] and [region] keys (plus top-level seed).
Experiment build_experiment(Config& cfg);

/// Solver names accepted by the harness.
inline const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {
      "vanilla_fw",     "scheduled_restarts", "restart_fractional_fw", "fractional_afw",
      "fractional_fw",  "one_shot_large_gamma"};
  return names;
}

struct SolverSpec {
  std::string name;
  std::string label;
  SolverConfig config;
  double epsilon = 1e-4;  // one_shot_large_gamma only
};

/// Reads the [solver] keys. `allow_lists` permits comma-separated solver.name
/// and solver.gamma values; each combination becomes one variant.
std::vector<SolverSpec> build_solvers(Config& cfg, const Experiment& ex, bool allow_lists);

RunLog run_solver(const Experiment& ex, const SolverSpec& spec);

/// Reference optimum: min f over a high-precision run (scheduled restarts on
/// polytopes, vanilla FW otherwise).
struct Reference {
  double f_star = 0.0;
  RunLog log;
};
Reference reference_optimum(const Experiment& ex, double target_gap, std::int64_t budget);

// --- run.csv ---------------------------------------------------------------

inline constexpr const char* kRunCsvHeader =
    "t,restart_index,step_type,eta,f,primal_gap,fw_gap,strong_wolfe_gap,active_set_size,"
    "lmo_calls,grad_calls";

/// Shortest decimal string that round-trips the double.
std::string format_real(double v);

std::string run_csv(const RunLog& log, double f_star);
void write_text(const std::filesystem::path& path, const std::string& text);

struct CsvSeries {
  std::vector<double> t;
  std::vector<double> primal_gap;
  std::vector<double> strong_wolfe_gap;
  std::vector<double> oracle_calls;
};
CsvSeries read_run_csv(const std::filesystem::path& path);

/// Aligns several runs on the cumulative oracle-call axis (lmo + grad). Each
/// variant contributes its latest record at or before each axis value.
std::string compare_csv(const std::vector<std::string>& labels, const std::vector<RunLog>& logs,
                        double f_star);

// --- commands --------------------------------------------------------------

int cmd_solve(const std::filesystem::path& config_path);
int cmd_compare(const std::filesystem::path& config_path);
int cmd_check_rates(const std::filesystem::path& config_path);

int exit_code_for(Termination t);

}  // namespace rfw
