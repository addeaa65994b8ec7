#pragma once

#include "fracgraph/fraccalc.hpp"

namespace fracgraph {

/// Parameters of E_{alpha,beta}: 0 < alpha <= 2, beta > 0.
class MLParams {
 public:
  MLParams(double alpha, double beta);
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_;
  double beta_;
};

inline constexpr double kMLSeriesSwitch = 5.0;
inline constexpr double kMLMaxArgument = 1e3;

/// Two-parameter Mittag-Leffler function for real z, |z| <= 1000.
///
/// Power series (Neumaier-compensated) for |z| <= 5 and for positive z while
/// the series stays short; the leading asymptotic expansion for large positive
/// z; and, for negative z with alpha < 1, the real-line integral
/// representation (after lowering beta below 1 + alpha by the recurrence
/// E_{a,b} = (E_{a,b-a} - 1/Gamma(b-a)) / z).  Switching to the integral
/// form first checks it against the series at the switch point and throws
/// AccuracyLoss if they disagree by more than 1e-8.
double mittag_leffler(const MLParams& p, double z);

/// Plain series with `terms` terms (no convergence test); for diagnostics.
double mittag_leffler_series(const MLParams& p, double z, int terms);

/// (l - s)^{alpha-1} E_{alpha,alpha}(k (l - s)^alpha), s in [0, l).
double ml_kernel(FracOrder alpha, double k, double s, double l);

}  // namespace fracgraph
