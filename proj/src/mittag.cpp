#include "fracgraph/mittag.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "fracgraph/errors.hpp"

namespace fracgraph {

namespace {

constexpr double kPositiveSeriesLimit = 50.0;  // series for z^{1/alpha} up to this
constexpr double kAgreementTol = 1e-8;
constexpr double kMaxCondition = 1e5;  // series condition number still worth 1e-11

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

struct SeriesResult {
  double value;
  double condition;
};

// Neumaier-compensated power series; stops once terms have peaked and
// dropped below 1e-17 of the running sum.
SeriesResult series(double a, double b, double z) {
  double sum = 1.0 / std::tgamma(b);
  double comp = 0.0;
  double abs_sum = std::abs(sum);
  if (z == 0.0) return {sum, 1.0};
  const double logz = std::log(std::abs(z));
  double prev = std::abs(sum);
  for (int n = 1; n < 200000; ++n) {
    const double mag = std::exp(n * logz - log_gamma(a * n + b));
    const double term = (z < 0.0 && (n & 1)) ? -mag : mag;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    abs_sum += mag;
    if (mag < prev && mag <= 1e-17 * std::abs(sum + comp)) break;
    prev = mag;
  }
  const double value = sum + comp;
  return {value, value == 0.0 ? INFINITY : abs_sum / std::abs(value)};
}

double asymptotic_positive(double a, double b, double z) {
  const double root = std::pow(z, 1.0 / a);
  if (root > 700.0) {
    std::ostringstream os;
    os << "mittag_leffler: E_{" << a << "," << b << "}(" << z << ") overflows";
    throw DomainError(os.str());
  }
  double s = std::pow(z, (1.0 - b) / a) * std::exp(root) / a;
  double zk = 1.0;
  for (int k = 1; k <= 12; ++k) {
    zk /= z;
    s -= zk * rgamma(b - a * k);
  }
  return s;
}

// Integral representation on the positive real line, valid for 0 < a < 1,
// b < 1 + a and z < 0.
double integral_negative(double a, double b, double z) {
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi * (1.0 - b));
  const double s2 = std::sin(pi * (1.0 - b + a));
  const double ca = std::cos(pi * a);
  auto kernel = [=](double chi) {
    if (chi == 0.0) return 0.0;
    const double w = std::pow(chi, (1.0 - b) / a) * std::exp(-std::pow(chi, 1.0 / a));
    if (w == 0.0) return 0.0;
    return w * (chi * s1 - z * s2) / (chi * chi - 2.0 * chi * z * ca + z * z);
  };
  static thread_local boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(kernel, 1e-14) / (a * pi);
}

double negative_regime(double a, double b, double z) {
  if (b < 1.0 + a) return integral_negative(a, b, z);
  return (negative_regime(a, b - a, z) - rgamma(b - a)) / z;
}

void check_negative_switch(double a, double b) {
  static std::mutex mu;
  static std::map<std::pair<double, double>, bool> checked;
  {
    std::lock_guard lock(mu);
    if (checked.count({a, b})) return;
  }
  // Largest switch point at which the alternating series is still reliable.
  double zs = -kMLSeriesSwitch;
  SeriesResult ser = series(a, b, zs);
  while (ser.condition > kMaxCondition && zs < -0.25) {
    zs *= 0.5;
    ser = series(a, b, zs);
  }
  const double alt = negative_regime(a, b, zs);
  const double diff = std::abs(alt - ser.value) / std::max(1.0, std::abs(ser.value));
  if (diff > kAgreementTol) {
    std::ostringstream os;
    os << "mittag_leffler: series and integral forms disagree at z = " << zs << " for (alpha, beta) = (" << a << ", "
       << b << "): " << diff;
    throw AccuracyLoss(os.str());
  }
  std::lock_guard lock(mu);
  checked[{a, b}] = true;
}

}  // namespace

MLParams::MLParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("Mittag-Leffler alpha must lie in (0, 2]");
  if (!(beta > 0.0)) throw DomainError("Mittag-Leffler beta must be positive");
}

double mittag_leffler_series(const MLParams& p, double z, int terms) {
  double sum = 1.0 / std::tgamma(p.beta());
  double comp = 0.0;
  double zn = 1.0;
  for (int n = 1; n < terms; ++n) {
    zn *= z;
    const double term = zn * std::exp(-log_gamma(p.alpha() * n + p.beta()));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double mittag_leffler(const MLParams& p, double z) {
  const double a = p.alpha();
  const double b = p.beta();
  if (!std::isfinite(z) || std::abs(z) > kMLMaxArgument) {
    std::ostringstream os;
    os << "mittag_leffler: |z| must not exceed " << kMLMaxArgument << ", got " << z;
    throw DomainError(os.str());
  }
  if (z == 0.0) return 1.0 / std::tgamma(b);

  if (z > 0.0) {
    if (z <= kMLSeriesSwitch || std::pow(z, 1.0 / a) <= kPositiveSeriesLimit) return series(a, b, z).value;
    return asymptotic_positive(a, b, z);
  }

  if (z >= -kMLSeriesSwitch) {
    const auto s = series(a, b, z);
    if (s.condition <= kMaxCondition) return s.value;
  }
  if (a < 1.0) {
    check_negative_switch(a, b);
    return negative_regime(a, b, z);
  }
  const auto s = series(a, b, z);
  if (s.condition > kMaxCondition) {
    std::ostringstream os;
    os << "mittag_leffler: alternating series loses accuracy at z = " << z << " (condition " << s.condition << ")";
    throw AccuracyLoss(os.str());
  }
  return s.value;
}

double ml_kernel(FracOrder alpha, double k, double s, double l) {
  if (!(s < l)) throw DomainError("ml_kernel: s must be strictly below l");
  if (s < 0.0) throw DomainError("ml_kernel: s must be non-negative");
  const double a = alpha.value();
  const double d = l - s;
  return std::pow(d, a - 1.0) * mittag_leffler(MLParams(a, a), k * std::pow(d, a));
}

}  // namespace fracgraph
