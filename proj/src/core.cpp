#include "rfw/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rfw {

bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
}

bool operator==(const VertexId& a, const VertexId& b) {
  if (a.is_basis() != b.is_basis()) return false;
  if (a.is_basis()) {
    return a.as_basis().index == b.as_basis().index && a.as_basis().sign == b.as_basis().sign;
  }
  const Vector& x = a.as_dense().coords;
  const Vector& y = b.as_dense().coords;
  if (x.size() != y.size()) return false;
  return (x - y).lpNorm<Eigen::Infinity>() <= VertexId::kDenseIdTolerance;
}

std::string VertexId::to_string() const {
  std::ostringstream os;
  if (is_basis()) {
    os << (as_basis().sign > 0 ? "+e" : "-e") << as_basis().index;
  } else {
    os << "[";
    const Vector& c = as_dense().coords;
    for (Eigen::Index i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

ActiveSet ActiveSet::singleton(const Vertex& v, double weight_tol) {
  ActiveSet s(weight_tol);
  s.entries_.push_back({v.id, v.point, 1.0});
  return s;
}

ActiveSet ActiveSet::from_entries(std::vector<ActiveEntry> entries, double weight_tol) {
  ActiveSet s(weight_tol);
  s.entries_ = std::move(entries);
  s.validate();
  return s;
}

std::optional<std::size_t> ActiveSet::find(const VertexId& id) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].id == id) return i;
  }
  return std::nullopt;
}

double ActiveSet::weight_of(const VertexId& id) const {
  auto i = find(id);
  return i ? entries_[*i].weight : 0.0;
}

Vector ActiveSet::reconstruct() const {
  if (entries_.empty()) throw DomainError("reconstruct on empty active set");
  Vector x = Vector::Zero(entries_.front().vertex.size());
  for (const auto& e : entries_) x.noalias() += e.weight * e.vertex;
  return x;
}

bool ActiveSet::apply_fw_step(const Vertex& v, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("FW step size " + std::to_string(eta) + " outside [0, 1]");
  }
  if (eta == 1.0) {
    bool inserted = !find(v.id).has_value();
    entries_.clear();
    entries_.push_back({v.id, v.point, 1.0});
    return inserted;
  }
  for (auto& e : entries_) e.weight *= (1.0 - eta);
  bool inserted = false;
  if (auto i = find(v.id)) {
    entries_[*i].weight += eta;
  } else {
    entries_.push_back({v.id, v.point, eta});
    inserted = true;
  }
  normalize();
  return inserted && find(v.id).has_value();
}

double ActiveSet::max_away_step(const VertexId& away) const {
  auto i = find(away);
  if (!i) throw DomainError("away vertex " + away.to_string() + " not in active set");
  const double a = entries_[*i].weight;
  if (a >= 1.0) return std::numeric_limits<double>::infinity();
  return a / (1.0 - a);
}

bool ActiveSet::apply_away_step(const VertexId& away, double eta) {
  auto i = find(away);
  if (!i) throw DomainError("away vertex " + away.to_string() + " not in active set");
  const double eta_max = max_away_step(away);
  if (!(eta >= 0.0)) throw DomainError("negative away step size");
  if (eta > eta_max + 1e-12) {
    throw DomainError("away step size " + std::to_string(eta) + " exceeds maximum " +
                      std::to_string(eta_max));
  }
  for (auto& e : entries_) e.weight *= (1.0 + eta);
  double& w = entries_[*i].weight;
  w -= eta;
  bool drop = w <= weight_tol_ || eta >= eta_max;
  if (drop) {
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(*i));
  }
  normalize();
  return drop;
}

void ActiveSet::normalize() {
  std::erase_if(entries_, [&](const ActiveEntry& e) { return e.weight <= weight_tol_; });
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight;
  if (std::abs(sum - 1.0) > 1e-12 && sum > 0.0) {
    for (auto& e : entries_) e.weight /= sum;
  }
}

void ActiveSet::validate() const {
  if (entries_.empty()) throw DomainError("active set is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!(e.weight > 0.0)) throw DomainError("active set weight not strictly positive");
    require_finite(e.vertex, "active set vertex");
    sum += e.weight;
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      if (entries_[j].id == e.id) throw DomainError("duplicate vertex " + e.id.to_string());
    }
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw DomainError("active set weights sum to " + std::to_string(sum));
  }
}

ActiveSet active_set_apply_fw_step(ActiveSet s, const Vertex& v, double eta) {
  s.apply_fw_step(v, eta);
  return s;
}

AwayStepResult active_set_apply_away_step(ActiveSet s, const VertexId& away, double eta) {
  bool drop = s.apply_away_step(away, eta);
  return {std::move(s), drop};
}

// ---------------------------------------------------------------------------

const char* to_string(LineSearchKind k) {
  switch (k) {
    case LineSearchKind::ExactQuadratic: return "exact";
    case LineSearchKind::GoldenSection: return "golden";
    case LineSearchKind::Adaptive: return "adaptive";
  }
  return "?";
}

LineSearchKind line_search_from_string(const std::string& s) {
  if (s == "exact" || s == "exact_quadratic") return LineSearchKind::ExactQuadratic;
  if (s == "golden" || s == "golden_section") return LineSearchKind::GoldenSection;
  if (s == "adaptive") return LineSearchKind::Adaptive;
  throw DomainError("unknown line search '" + s + "'");
}

void SolverConfig::validate() const {
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(target_gap > 0.0)) throw DomainError("target_gap must be positive");
  if (!(adaptive.tau > 1.0)) throw DomainError("tau must exceed 1");
  if (!(adaptive.xi >= 1.0)) throw DomainError("xi must be at least 1");
  if (!(adaptive.initial_l > 0.0)) throw DomainError("initial Lipschitz estimate must be positive");
  if (curvature_estimate && !(*curvature_estimate > 0.0)) {
    throw DomainError("curvature estimate must be positive");
  }
  if (max_oracle_calls <= 0) throw DomainError("max_oracle_calls must be positive");
}

const char* to_string(StepType s) {
  switch (s) {
    case StepType::FW: return "FW";
    case StepType::Away: return "Away";
    case StepType::Drop: return "Drop";
    case StepType::Null: return "Null";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::GapReached: return "GapReached";
    case Termination::OracleBudget: return "OracleBudget";
    case Termination::Stalled: return "Stalled";
  }
  return "?";
}

}  // namespace rfw
