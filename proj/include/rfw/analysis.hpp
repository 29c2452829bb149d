#pragma once

#include <span>
#include <vector>

#include "rfw/core.hpp"

namespace rfw {

/// Constants of the strong Wolfe primal bound f(x) - f* <= mu w(x)^r and of
/// the Hölderian error bound / scaling inequality it is derived from.
struct RateParams {
  double r = 2.0;
  double mu = 1.0;
  double theta = 0.5;
  double c = 1.0;
  double delta = 1.0;
  double s = 2.0;  // Hölder smoothness exponent
  double curvature = 1.0;

  /// r = 1/(1-theta), mu = (c/delta)^r.
  static RateParams from_error_bound(double theta, double c, double delta, double curvature,
                                     double s = 2.0);
};

/// Primal-gap bound after t_tilde iterations of scheduled restarts:
///   r < 2:  w0 / (1 + t C)^(1/(2-r)),  C = (e^{g(2-r)} - 1) / (8 e^{2g} C_f mu w0^{r-2})
///   r = 2:  w0 exp(-g t / (8 C_f mu e^{2g}))
double theoretical_bound(const RateParams& params, double gamma, double w0, double t_tilde);

/// Hölder-smooth analogue with tau = s/(s-1) - r:
///   w0 / (1 + t C)^(1/tau),  C = (e^{g tau} - 1) / (C_s e^{g s/(s-1)} w0^{-tau}),
///   C_s = 2^{s/(s-1)} (s/(s-1)) mu C_f^{1/(s-1)}.
/// At s = 2 this coincides with theoretical_bound.
double holder_bound(const RateParams& params, double gamma, double w0, double t_tilde);

struct RecurrenceResult {
  std::vector<double> trajectory;
  double k = 0.0;
  double c_prime = 0.0;
  double c = 0.0;
  bool ok = false;
  std::int64_t first_violation = -1;
};

/// Simulates h_{t+1} = h_t max(1/2, 1 - m h_t^beta) and checks
/// h_t <= C / (t + k)^(1/beta) for all t <= t_max.
RecurrenceResult recurrence_check(double h0, double m, double beta, std::int64_t t_max);

/// One restart boundary compared against the calibrated bound.
struct RestartBoundRow {
  std::int64_t restart = 0;
  double t_tilde = 0.0;
  double observed = 0.0;
  double bound = 0.0;
};

struct RestartBoundCheck {
  double mu = 0.0;
  double w0 = 0.0;
  std::vector<RestartBoundRow> rows;
  bool ok = false;
};

/// Calibrates mu as the smallest value for which theoretical_bound covers the
/// gap at the first completed restart, then checks every later boundary.
/// t_tilde_k = T_k - (|S_0| - |S_k|) counted from the first non-burn-in
/// boundary. Needs at least two such boundaries.
RestartBoundCheck check_restart_bound(const RunLog& log, double gamma, double r, double curvature);

enum class RateModel { LogLinear, LogLog };

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

inline constexpr std::size_t kMinFitPoints = 20;

/// Least squares of log10(gap) against t (LogLinear) or log10(t) (LogLog) over
/// the last tail_fraction of the points with positive gap (and t >= 1 for
/// LogLog).
RateFit fit_rate(std::span<const double> t, std::span<const double> gap, RateModel model,
                 double tail_fraction = 0.5);

/// Same, on a run log's primal gaps f_value - f_star against iteration index.
RateFit fit_rate(const RunLog& log, double f_star, RateModel model, double tail_fraction = 0.5);

}  // namespace rfw
