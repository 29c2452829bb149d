#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "rfw/core.hpp"

namespace rfw {

struct Dataset {
  Matrix X;  // n_samples x dim
  Vector y;
  std::optional<Vector> planted;  // generating coefficients, when synthetic

  Eigen::Index n_samples() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
  void validate() const;
};

enum class ObjectiveKind { LeastSquares, PoweredNorm, Logistic };

const char* to_string(ObjectiveKind k);

/// Empirical loss over a dataset:
///   least squares  (1/2n) sum (y_i - x_i.w)^2
///   powered norm   (1/(alpha n)) sum |y_i - x_i.w|^alpha
///   logistic       (1/n) sum log(1 + exp(-y_i x_i.w))
class Objective {
 public:
  static Objective least_squares(Dataset data);
  static Objective powered_norm(Dataset data, double alpha);
  static Objective logistic(Dataset data);
  /// ||w - center||^2 / 2 expressed as a least-squares loss.
  static Objective squared_distance(const Vector& center);

  ObjectiveKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const Dataset& data() const { return data_; }
  Eigen::Index dim() const { return data_.dim(); }

  double value(const Vector& w) const;
  Vector gradient(const Vector& w) const;

  /// d^T (X^T X / n) d, the exact second derivative of least squares along d.
  double quadratic_curvature(const Vector& d) const;

  /// Global smoothness constant where one exists: lambda_max(X^T X)/n for least
  /// squares (alpha = 2 powered norm alike), a quarter of that for logistic.
  /// Empty for powered norm with alpha != 2.
  std::optional<double> smoothness() const;

  /// Default step-size rule for this loss.
  LineSearchKind default_line_search() const;

 private:
  Objective(ObjectiveKind k, Dataset d, double alpha);
  void check_dim(const Vector& w) const;

  ObjectiveKind kind_;
  Dataset data_;
  double alpha_ = 2.0;
  double gram_lambda_max_ = 0.0;  // lambda_max(X^T X)/n
};

/// Largest eigenvalue of X^T X / n by power iteration.
double gram_top_eigenvalue(const Matrix& X, int max_iter = 100, double tol = 1e-8);

enum class SyntheticKind { Regression, Classification };

/// Gaussian design, planted coefficients with max(1, dim/10) nonzeros.
Dataset generate_synthetic(SyntheticKind kind, int n_samples, int dim, double noise,
                           std::uint64_t seed);

/// First column target, remaining columns features. A non-numeric first row is
/// treated as a header.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(const std::string& text);

/// Least-squares fit of y on X (minimum-norm when rank deficient).
Vector least_squares_solution(const Dataset& data);

}  // namespace rfw
