#include "rfw/objectives.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace rfw {

namespace {

double softplus(double t) {
  // log(1 + exp(t))
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

void Dataset::validate() const {
  if (X.rows() < 1 || X.cols() < 1) throw DomainError("dataset is empty");
  if (X.rows() != y.size()) throw DomainError("dataset: X rows and y length differ");
  if (!X.allFinite() || !y.allFinite()) throw DomainError("dataset has non-finite entries");
}

const char* to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::LeastSquares: return "least_squares";
    case ObjectiveKind::PoweredNorm: return "powered_norm";
    case ObjectiveKind::Logistic: return "logistic";
  }
  return "?";
}

Objective::Objective(ObjectiveKind k, Dataset d, double alpha)
    : kind_(k), data_(std::move(d)), alpha_(alpha) {
  data_.validate();
  gram_lambda_max_ = gram_top_eigenvalue(data_.X);
}

Objective Objective::least_squares(Dataset data) {
  return Objective(ObjectiveKind::LeastSquares, std::move(data), 2.0);
}

Objective Objective::powered_norm(Dataset data, double alpha) {
  if (!(alpha > 1.0)) throw DomainError("powered norm requires alpha > 1");
  return Objective(ObjectiveKind::PoweredNorm, std::move(data), alpha);
}

Objective Objective::logistic(Dataset data) {
  for (Eigen::Index i = 0; i < data.y.size(); ++i) {
    if (data.y[i] != 1.0 && data.y[i] != -1.0) throw DomainError("logistic labels must be +1 or -1");
  }
  return Objective(ObjectiveKind::Logistic, std::move(data), 2.0);
}

Objective Objective::squared_distance(const Vector& center) {
  const auto n = center.size();
  const double s = std::sqrt(static_cast<double>(n));
  Dataset d;
  d.X = s * Matrix::Identity(n, n);
  d.y = s * center;
  return least_squares(std::move(d));
}

void Objective::check_dim(const Vector& w) const {
  if (w.size() != data_.dim()) {
    throw DomainError("objective: expected dimension " + std::to_string(data_.dim()) + ", got " +
                      std::to_string(w.size()));
  }
}

double Objective::value(const Vector& w) const {
  check_dim(w);
  const double n = static_cast<double>(data_.n_samples());
  const Vector margin = data_.X * w;
  switch (kind_) {
    case ObjectiveKind::LeastSquares:
      return (data_.y - margin).squaredNorm() / (2.0 * n);
    case ObjectiveKind::PoweredNorm:
      return (data_.y - margin).array().abs().pow(alpha_).sum() / (alpha_ * n);
    case ObjectiveKind::Logistic: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < margin.size(); ++i) s += softplus(-data_.y[i] * margin[i]);
      return s / n;
    }
  }
  return 0.0;
}

Vector Objective::gradient(const Vector& w) const {
  check_dim(w);
  const double n = static_cast<double>(data_.n_samples());
  const Vector margin = data_.X * w;
  Vector weights(margin.size());
  switch (kind_) {
    case ObjectiveKind::LeastSquares:
      weights = margin - data_.y;
      break;
    case ObjectiveKind::PoweredNorm:
      for (Eigen::Index i = 0; i < margin.size(); ++i) {
        const double r = data_.y[i] - margin[i];
        weights[i] = r == 0.0 ? 0.0 : -sign_of(r) * std::pow(std::abs(r), alpha_ - 1.0);
      }
      break;
    case ObjectiveKind::Logistic:
      for (Eigen::Index i = 0; i < margin.size(); ++i) {
        weights[i] = -data_.y[i] * sigmoid(-data_.y[i] * margin[i]);
      }
      break;
  }
  return data_.X.transpose() * weights / n;
}

double Objective::quadratic_curvature(const Vector& d) const {
  check_dim(d);
  return (data_.X * d).squaredNorm() / static_cast<double>(data_.n_samples());
}

std::optional<double> Objective::smoothness() const {
  switch (kind_) {
    case ObjectiveKind::LeastSquares: return gram_lambda_max_;
    case ObjectiveKind::Logistic: return gram_lambda_max_ / 4.0;
    case ObjectiveKind::PoweredNorm:
      if (alpha_ == 2.0) return gram_lambda_max_;
      return std::nullopt;
  }
  return std::nullopt;
}

LineSearchKind Objective::default_line_search() const {
  return kind_ == ObjectiveKind::LeastSquares ? LineSearchKind::ExactQuadratic
                                              : LineSearchKind::Adaptive;
}

double gram_top_eigenvalue(const Matrix& X, int max_iter, double tol) {
  const auto dim = X.cols();
  if (dim == 0 || X.rows() == 0) return 0.0;
  const double n = static_cast<double>(X.rows());
  // Deterministic, generically non-orthogonal start.
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = 1.0 + 0.1 * std::sin(1.0 + double(i));
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = X.transpose() * (X * v) / n;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // Power iteration underestimates; the Rayleigh quotient with the final
  // vector is the best lower bound we have.
  return std::max(lambda, v.dot(X.transpose() * (X * v)) / n);
}

Dataset generate_synthetic(SyntheticKind kind, int n_samples, int dim, double noise,
                           std::uint64_t seed) {
  if (n_samples < 1 || dim < 1) throw DomainError("synthetic data needs n_samples, dim >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.5, 1.5);

  Dataset d;
  d.X.resize(n_samples, dim);
  for (int i = 0; i < n_samples; ++i) {
    for (int j = 0; j < dim; ++j) d.X(i, j) = normal(rng);
  }

  const int k = std::max(1, dim / 10);
  std::vector<int> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  for (int j = 0; j < k; ++j) {
    std::uniform_int_distribution<int> pick(j, dim - 1);
    std::swap(idx[j], idx[pick(rng)]);
  }
  Vector w = Vector::Zero(dim);
  for (int j = 0; j < k; ++j) {
    const double sign = uniform(rng) < 1.0 ? -1.0 : 1.0;
    w[idx[j]] = sign * uniform(rng);
  }

  d.y = d.X * w;
  for (int i = 0; i < n_samples; ++i) {
    const double eps = normal(rng);
    d.y[i] += noise * eps;
  }
  if (kind == SyntheticKind::Classification) {
    for (int i = 0; i < n_samples; ++i) d.y[i] = d.y[i] >= 0.0 ? 1.0 : -1.0;
  }
  d.planted = std::move(w);
  return d;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Dataset parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool first_content = true;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    std::vector<double> row(fields.size());
    bool ok = true;
    for (std::size_t j = 0; j < fields.size() && ok; ++j) ok = parse_number(fields[j], row[j]);
    if (!ok) {
      if (first_content) {
        first_content = false;
        width = fields.size();
        continue;  // header
      }
      throw ParseError("malformed row", line_no);
    }
    if (first_content) width = fields.size();
    first_content = false;
    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (width < 2) throw ParseError("need a target column and at least one feature", line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", line_no);

  Dataset d;
  d.X.resize(Eigen::Index(rows.size()), Eigen::Index(width - 1));
  d.y.resize(Eigen::Index(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.y[Eigen::Index(i)] = rows[i][0];
    for (std::size_t j = 1; j < width; ++j) d.X(Eigen::Index(i), Eigen::Index(j - 1)) = rows[i][j];
  }
  return d;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

Vector least_squares_solution(const Dataset& data) {
  return data.X.completeOrthogonalDecomposition().solve(data.y);
}

}  // namespace rfw
