#include "rfw/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rfw {

RateParams RateParams::from_error_bound(double theta, double c, double delta, double curvature,
                                        double s) {
  if (!(theta >= 0.0 && theta < 1.0)) throw DomainError("theta must lie in [0, 1)");
  RateParams p;
  p.theta = theta;
  p.c = c;
  p.delta = delta;
  p.s = s;
  p.curvature = curvature;
  p.r = 1.0 / (1.0 - theta);
  p.mu = std::pow(c / delta, p.r);
  return p;
}

double theoretical_bound(const RateParams& p, double gamma, double w0, double t_tilde) {
  if (!(p.r >= 1.0 && p.r <= 2.0)) throw DomainError("r must lie in [1, 2]");
  if (!(w0 > 0.0)) throw DomainError("w0 must be positive");
  if (!(t_tilde >= 0.0)) throw DomainError("t_tilde must be non-negative");
  const double denom_common = 8.0 * std::exp(2.0 * gamma) * p.curvature * p.mu;
  if (p.r == 2.0) return w0 * std::exp(-gamma * t_tilde / denom_common);
  const double rate = std::expm1(gamma * (2.0 - p.r)) / (denom_common * std::pow(w0, p.r - 2.0));
  return w0 / std::pow(1.0 + t_tilde * rate, 1.0 / (2.0 - p.r));
}

double holder_bound(const RateParams& p, double gamma, double w0, double t_tilde) {
  if (!(p.s > 1.0 && p.s <= 2.0)) throw DomainError("s must lie in (1, 2]");
  if (!(w0 > 0.0)) throw DomainError("w0 must be positive");
  if (!(t_tilde >= 0.0)) throw DomainError("t_tilde must be non-negative");
  const double conj = p.s / (p.s - 1.0);
  if (!(p.r < conj)) throw DomainError("holder bound needs r < s/(s-1)");
  const double tau = conj - p.r;
  const double c_s = std::pow(2.0, conj) * conj * p.mu * std::pow(p.curvature, 1.0 / (p.s - 1.0));
  const double rate = std::expm1(gamma * tau) / (c_s * std::exp(gamma * conj) * std::pow(w0, -tau));
  return w0 / std::pow(1.0 + t_tilde * rate, 1.0 / tau);
}

RecurrenceResult recurrence_check(double h0, double m, double beta, std::int64_t t_max) {
  if (!(h0 > 0.0)) throw DomainError("h0 must be positive");
  if (!(m > 0.0)) throw DomainError("m must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
  if (t_max < 0) throw DomainError("t_max must be non-negative");

  RecurrenceResult out;
  const double two_b = std::pow(2.0, beta);
  const double denom = beta - (1.0 - beta) * (two_b - 1.0);
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << "beta = " << beta << " gives non-positive denominator " << denom << " for C'";
    throw DomainError(os.str());
  }
  out.k = (2.0 - two_b) / (two_b - 1.0);
  out.c_prime = 1.0 / denom;
  out.c = std::max(h0 * std::pow(out.k, 1.0 / beta), 2.0 * std::pow(out.c_prime / m, 1.0 / beta));

  out.trajectory.resize(std::size_t(t_max) + 1);
  double h = h0;
  out.ok = true;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    out.trajectory[std::size_t(t)] = h;
    const double base = double(t) + out.k;
    const double bound = base > 0.0 ? out.c / std::pow(base, 1.0 / beta)
                                    : std::numeric_limits<double>::infinity();
    if (h > bound && out.ok) {
      out.ok = false;
      out.first_violation = t;
    }
    h *= std::max(0.5, 1.0 - m * std::pow(h, beta));
  }
  return out;
}

RestartBoundCheck check_restart_bound(const RunLog& log, double gamma, double r,
                                      double curvature) {
  std::vector<RestartBoundary> b;
  for (const auto& rb : log.restart_boundaries) {
    if (!rb.burn_in) b.push_back(rb);
  }
  if (b.size() < 2) throw DomainError("bound check needs at least two restart boundaries");
  RestartBoundCheck out;
  out.w0 = b[0].gap_at_restart;
  auto t_tilde = [&](const RestartBoundary& rb) {
    return double(rb.t - b[0].t) - double(b[0].active_set_size - rb.active_set_size);
  };
  RateParams p;
  p.r = r;
  p.curvature = curvature;
  auto bound_at = [&](double mu, const RestartBoundary& rb) {
    p.mu = mu;
    return theoretical_bound(p, gamma, out.w0, std::max(0.0, t_tilde(rb)));
  };
  // The bound grows with mu; bisect in log space for the smallest valid mu.
  const RestartBoundary& first = b[1];
  double lo = 1e-300, hi = 1.0;
  while (bound_at(hi, first) < first.gap_at_restart) {
    hi *= 2.0;
    if (hi > 1e300) throw DomainError("bound check: no mu covers the first restart");
  }
  if (bound_at(lo, first) >= first.gap_at_restart) {
    hi = lo;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = std::sqrt(lo * hi);
      if (bound_at(mid, first) >= first.gap_at_restart) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  out.mu = hi;
  out.ok = true;
  for (std::size_t k = 1; k < b.size(); ++k) {
    RestartBoundRow row;
    row.restart = b[k].restart_index;
    row.t_tilde = t_tilde(b[k]);
    row.observed = b[k].gap_at_restart;
    row.bound = bound_at(out.mu, b[k]);
    if (row.observed > row.bound) out.ok = false;
    out.rows.push_back(row);
  }
  return out;
}

RateFit fit_rate(std::span<const double> t, std::span<const double> gap, RateModel model,
                 double tail_fraction) {
  if (t.size() != gap.size()) throw DomainError("fit_rate: series lengths differ");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw DomainError("tail_fraction must lie in (0, 1]");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(gap[i] > 0.0) || !std::isfinite(gap[i])) continue;
    if (model == RateModel::LogLog && !(t[i] >= 1.0)) continue;
    xs.push_back(model == RateModel::LogLog ? std::log10(t[i]) : t[i]);
    ys.push_back(std::log10(gap[i]));
  }
  const std::size_t keep = static_cast<std::size_t>(std::ceil(tail_fraction * double(xs.size())));
  if (keep < kMinFitPoints) {
    throw DomainError("fit_rate: " + std::to_string(keep) + " points in tail, need " +
                      std::to_string(kMinFitPoints));
  }
  const std::size_t first = xs.size() - keep;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = first; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(keep);
  my /= double(keep);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = first; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_rate: degenerate abscissa");
  RateFit fit;
  fit.points = keep;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

RateFit fit_rate(const RunLog& log, double f_star, RateModel model, double tail_fraction) {
  std::vector<double> t, gap;
  t.reserve(log.records.size());
  gap.reserve(log.records.size());
  for (const auto& r : log.records) {
    t.push_back(double(r.t));
    gap.push_back(r.f_value - f_star);
  }
  return fit_rate(t, gap, model, tail_fraction);
}

}  // namespace rfw
