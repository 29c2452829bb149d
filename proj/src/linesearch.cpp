#include "rfw/linesearch.hpp"

#include <algorithm>
#include <cmath>

namespace rfw {

namespace {

void require_nonzero(const Vector& d) {
  if (d.size() == 0 || d.lpNorm<Eigen::Infinity>() == 0.0) {
    throw DomainError("line search along a zero direction");
  }
}

}  // namespace

double exact_quadratic(const Objective& obj, const Vector& grad, const Vector& d, double eta_max) {
  if (obj.kind() != ObjectiveKind::LeastSquares) {
    throw DomainError("exact line search needs a least-squares objective");
  }
  require_nonzero(d);
  if (!(eta_max > 0.0)) throw DomainError("eta_max must be positive");
  const double curvature = obj.quadratic_curvature(d);
  if (curvature <= 1e-300) return eta_max;
  const double eta = -grad.dot(d) / curvature;
  return std::clamp(eta, 0.0, eta_max);
}

double exact_quadratic_at(const Objective& obj, const Vector& x, const Vector& d, double eta_max) {
  return exact_quadratic(obj, obj.gradient(x), d, eta_max);
}

double golden_section(const Objective& obj, const Vector& x, const Vector& d, double eta_max,
                      double tol, int max_iter) {
  require_nonzero(d);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double eta) { return obj.value(x + eta * d); };

  double lo = 0.0, hi = eta_max;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < max_iter && (hi - lo) > tol * eta_max; ++it) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  // Compare the bracket against both ends so boundary minima are exact.
  double best = fa <= fb ? a : b;
  double best_f = std::min(fa, fb);
  for (double end : {0.0, eta_max}) {
    const double fe = f(end);
    if (fe < best_f) {
      best_f = fe;
      best = end;
    }
  }
  return best;
}

bool sufficient_decrease(double f_new, double f_x, double slope, double d_norm_sq, double eta,
                         double m) {
  return f_new <= quadratic_model(f_x, slope, d_norm_sq, eta, m) +
                      kDecreaseRoundingSlack * std::abs(f_x);
}

AdaptiveStep adaptive_step(const LipschitzState& state, const Objective& obj, const Vector& x,
                           const Vector& d, double eta_max, const Vector& grad, double f_x) {
  require_nonzero(d);
  const double slope = grad.dot(d);
  if (!(slope < 0.0)) throw DomainError("adaptive line search needs a descent direction");
  const double d_norm_sq = d.squaredNorm();

  AdaptiveStep out;
  out.state = state;
  double m = state.current_l / state.xi;
  while (true) {
    if (!(m <= 1e300)) {
      throw DivergedError("Lipschitz estimate exceeded 1e300; objective is not smooth along d");
    }
    const double eta = std::min(-slope / (m * d_norm_sq), eta_max);
    const double f_new = obj.value(x + eta * d);
    ++out.evals;
    if (sufficient_decrease(f_new, f_x, slope, d_norm_sq, eta, m)) {
      out.eta = eta;
      out.f_new = f_new;
      out.state.current_l = m;
      return out;
    }
    m *= state.tau;
  }
}

AdaptiveStep adaptive_step(const LipschitzState& state, const Objective& obj, const Vector& x,
                           const Vector& d, double eta_max) {
  return adaptive_step(state, obj, x, d, eta_max, obj.gradient(x), obj.value(x));
}

}  // namespace rfw
