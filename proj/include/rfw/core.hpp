#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace rfw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Error kinds. All derive from std::runtime_error / std::logic_error so callers
// that do not care can catch std::exception.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DivergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

bool all_finite(const Vector& v);
void require_finite(const Vector& v, const char* what);
void require_same_size(const Vector& a, const Vector& b, const char* what);

// ---------------------------------------------------------------------------
// Vertex identity

struct SignedBasis {
  int index = 0;
  int sign = 1;  // +1 or -1
};

struct DenseVertex {
  Vector coords;
};

/// Identity of an extreme point. Signed basis vertices compare exactly,
/// dense vertices coordinate-wise within kDenseIdTolerance.
class VertexId {
 public:
  static constexpr double kDenseIdTolerance = 1e-12;

  VertexId() = default;
  VertexId(SignedBasis b) : tag_(b) {}
  VertexId(DenseVertex d) : tag_(std::move(d)) {}

  static VertexId basis(int index, int sign) { return VertexId(SignedBasis{index, sign}); }
  static VertexId dense(Vector coords) { return VertexId(DenseVertex{std::move(coords)}); }

  bool is_basis() const { return std::holds_alternative<SignedBasis>(tag_); }
  const SignedBasis& as_basis() const { return std::get<SignedBasis>(tag_); }
  const DenseVertex& as_dense() const { return std::get<DenseVertex>(tag_); }

  std::string to_string() const;

  friend bool operator==(const VertexId& a, const VertexId& b);

 private:
  std::variant<SignedBasis, DenseVertex> tag_;
};

struct Vertex {
  VertexId id;
  Vector point;
};

// ---------------------------------------------------------------------------
// Active set

struct ActiveEntry {
  VertexId id;
  Vector vertex;
  double weight = 0.0;
};

/// Proper convex-combination representation of an iterate. Entries keep
/// insertion order, which is the tie-break order for away-vertex selection.
class ActiveSet {
 public:
  static constexpr double kDefaultWeightTol = 1e-12;

  ActiveSet() = default;
  explicit ActiveSet(double weight_tol) : weight_tol_(weight_tol) {}

  static ActiveSet singleton(const Vertex& v, double weight_tol = kDefaultWeightTol);

  /// Builds from explicit entries; validates weights and duplicates.
  static ActiveSet from_entries(std::vector<ActiveEntry> entries,
                                double weight_tol = kDefaultWeightTol);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<ActiveEntry>& entries() const { return entries_; }
  const ActiveEntry& operator[](std::size_t i) const { return entries_[i]; }
  double weight_tol() const { return weight_tol_; }

  std::optional<std::size_t> find(const VertexId& id) const;
  double weight_of(const VertexId& id) const;

  Vector reconstruct() const;

  /// x <- (1-eta) x + eta v. Returns true if v was newly inserted.
  bool apply_fw_step(const Vertex& v, double eta);

  /// x <- (1+eta) x - eta a. Returns true on a drop step.
  bool apply_away_step(const VertexId& away, double eta);

  /// Largest feasible away step length alpha/(1-alpha) for the given vertex;
  /// +inf when the vertex carries all the mass.
  double max_away_step(const VertexId& away) const;

  /// Throws DomainError if an invariant is violated.
  void validate() const;

 private:
  void normalize();

  std::vector<ActiveEntry> entries_;
  double weight_tol_ = kDefaultWeightTol;
};

ActiveSet active_set_apply_fw_step(ActiveSet s, const Vertex& v, double eta);

struct AwayStepResult {
  ActiveSet set;
  bool was_drop = false;
};

AwayStepResult active_set_apply_away_step(ActiveSet s, const VertexId& away, double eta);

// ---------------------------------------------------------------------------
// Gaps, configuration, logs

struct GapReport {
  double fw_gap = 0.0;
  double away_gap = 0.0;
  double strong_wolfe_gap = 0.0;
  Vertex fw_vertex;
  std::optional<Vertex> away_vertex;
};

struct OracleCounters {
  std::int64_t lmo_calls = 0;
  std::int64_t grad_calls = 0;
  std::int64_t total() const { return lmo_calls + grad_calls; }
};

enum class LineSearchKind { ExactQuadratic, GoldenSection, Adaptive };

const char* to_string(LineSearchKind k);
LineSearchKind line_search_from_string(const std::string& s);

struct AdaptiveParams {
  double tau = 2.0;
  double xi = 1.5;
  double initial_l = 1.0;
};

/// Data handed to SolverConfig::on_step after every accepted step.
struct StepTrace {
  std::int64_t t = 0;
  double f_before = 0.0;
  double f_after = 0.0;
  double slope = 0.0;  // <grad f(x), d>
  double direction_norm_sq = 0.0;
  double eta = 0.0;
  double eta_max = 0.0;
  double lipschitz = 0.0;  // accepted M for adaptive search, 0 otherwise
};

struct SolverConfig {
  double gamma = 0.5;
  double target_gap = 1e-8;
  std::int64_t max_oracle_calls = 100000;
  /// Unset selects per objective: exact for least squares, adaptive otherwise.
  std::optional<LineSearchKind> line_search;
  AdaptiveParams adaptive;
  std::optional<double> curvature_estimate;
  double weight_tol = ActiveSet::kDefaultWeightTol;
  std::uint64_t seed = 0;
  std::function<void(const StepTrace&)> on_step;

  void validate() const;
};

enum class StepType { FW, Away, Drop, Null };

const char* to_string(StepType s);

struct IterationRecord {
  std::int64_t t = 0;
  StepType step_type = StepType::Null;
  double eta = 0.0;
  double f_value = 0.0;
  double fw_gap = 0.0;
  double strong_wolfe_gap = 0.0;
  std::int64_t active_set_size = 0;
  std::int64_t lmo_calls = 0;
  std::int64_t grad_calls = 0;
  std::int64_t restart_index = 0;
};

enum class Termination { GapReached, OracleBudget, Stalled };

const char* to_string(Termination t);

/// Start of a restart segment (or a Phi update for the restarted FW variant).
struct RestartBoundary {
  std::int64_t restart_index = 0;
  std::int64_t t = 0;
  double gap_at_restart = 0.0;
  std::int64_t active_set_size = 0;
  bool burn_in = false;
};

struct RunLog {
  std::vector<IterationRecord> records;
  std::vector<RestartBoundary> restart_boundaries;
  Termination termination = Termination::GapReached;
  Vector final_x;
  std::optional<ActiveSet> final_active_set;
  double final_f = 0.0;
  double final_fw_gap = 0.0;
  double final_strong_wolfe_gap = 0.0;
  OracleCounters counters;
  std::int64_t iterations = 0;
};

}  // namespace rfw
