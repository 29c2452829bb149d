#pragma once

#include "rfw/core.hpp"
#include "rfw/objectives.hpp"

namespace rfw {

/// Running Lipschitz estimate of the backtracking line search.
struct LipschitzState {
  double current_l = 1.0;
  double tau = 2.0;
  double xi = 1.5;

  static LipschitzState from(const AdaptiveParams& p) { return {p.initial_l, p.tau, p.xi}; }
};

/// Closed-form minimizer of a least-squares loss along d, clamped to [0, eta_max].
double exact_quadratic(const Objective& obj, const Vector& grad, const Vector& d, double eta_max);
double exact_quadratic_at(const Objective& obj, const Vector& x, const Vector& d, double eta_max);

double golden_section(const Objective& obj, const Vector& x, const Vector& d, double eta_max,
                      double tol = 1e-10, int max_iter = 200);

struct AdaptiveStep {
  double eta = 0.0;
  LipschitzState state;
  int evals = 0;
  double f_new = 0.0;
};

/// Relative rounding allowance used in the sufficient-decrease test, so that a
/// step whose decrease is below floating-point resolution of f is not rejected
/// forever.
inline constexpr double kDecreaseRoundingSlack = 4.0 * 2.220446049250313e-16;

/// Q(eta, M) = f(x) + eta <grad, d> + eta^2 M ||d||^2 / 2
inline double quadratic_model(double f_x, double slope, double d_norm_sq, double eta, double m) {
  return f_x + eta * slope + 0.5 * eta * eta * m * d_norm_sq;
}

/// True when f(x + eta d) satisfies the accepted model within rounding.
bool sufficient_decrease(double f_new, double f_x, double slope, double d_norm_sq, double eta,
                         double m);

/// Backtracking search: M starts at L/xi and grows by tau until
/// f(x + eta d) <= Q(eta, M) with eta = min(-<grad,d>/(M||d||^2), eta_max).
AdaptiveStep adaptive_step(const LipschitzState& state, const Objective& obj, const Vector& x,
                           const Vector& d, double eta_max, const Vector& grad, double f_x);
AdaptiveStep adaptive_step(const LipschitzState& state, const Objective& obj, const Vector& x,
                           const Vector& d, double eta_max);

}  // namespace rfw
