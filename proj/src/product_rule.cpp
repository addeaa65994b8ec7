#include "product_rule.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "fracgraph/errors.hpp"

namespace fracgraph::detail {

namespace {

constexpr double kSeriesSwitch = 0.02;

// int_0^r (1+w)^e dw
double growth(double r, double e) {
  if (e == -1.0) return std::log1p(r);
  return std::expm1((e + 1.0) * std::log1p(r)) / (e + 1.0);
}

// int_0^r (1+w)^e w dw
double first_moment(double r, double e) {
  if (r > kSeriesSwitch) return growth(r, e + 1.0) - growth(r, e);
  double binom = 1.0;
  double rp = r * r;
  double sum = 0.0;
  for (int m = 0; m < 60; ++m) {
    const double term = binom * rp / (m + 2);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    binom *= (e - m) / (m + 1);
    rp *= r;
  }
  return sum;
}

}  // namespace

double power_integral(double h, double e) {
  if (e == -1.0) return std::log(h);
  return std::pow(h, e + 1.0) / (e + 1.0);
}

double cell_moment(double a, double h, double e) {
  if (a == 0.0) return power_integral(h, e);
  return std::pow(a, e + 1.0) * growth(h / a, e);
}

CellWeights cell_weights(double a, double h, double e) {
  double m0 = 0.0;
  double p = 0.0;
  if (a == 0.0) {
    m0 = power_integral(h, e);
    p = power_integral(h, e + 1.0);
  } else {
    const double r = h / a;
    const double ae1 = std::pow(a, e + 1.0);
    m0 = ae1 * growth(r, e);
    p = ae1 * a * first_moment(r, e);
  }
  const double far = p / h;
  return {far, m0 - far};
}

cplx kernel_row(const Grid& g, std::size_t i, double e, std::span<const cplx> f) {
  cplx sum{};
  const double xi = g[i];
  for (std::size_t k = 0; k < i; ++k) {
    const double h = g[k + 1] - g[k];
    const double a = k + 1 == i ? 0.0 : xi - g[k + 1];
    const auto w = cell_weights(a, h, e);
    sum += w.far * f[k] + w.near * f[k + 1];
  }
  return sum;
}

double cross_integral(double x, double d, double s, double t) {
  if (x <= 0.0) return 0.0;
  if (!(d > 0.0)) throw DomainError("cross_integral: distance to the far endpoint must be positive");
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  auto f = [=](double u) { return std::pow(u, s) * std::pow(d + u, t); };
  return integrator.integrate(f, 0.0, x, 1e-13);
}

cplx weighted_integral(const Grid& g, std::span<const cplx> f, Endpoint from, double e) {
  const std::size_t n = g.intervals();
  const double len = g.length();
  cplx sum{};
  for (std::size_t k = 0; k < n; ++k) {
    const double h = g[k + 1] - g[k];
    if (from == Endpoint::at_zero) {
      // u = t, near node x_k
      const auto w = cell_weights(k == 0 ? 0.0 : g[k], h, e);
      sum += w.near * f[k] + w.far * f[k + 1];
    } else {
      // u = L - t, near node x_{k+1}
      const auto w = cell_weights(k + 1 == n ? 0.0 : len - g[k + 1], h, e);
      sum += w.far * f[k] + w.near * f[k + 1];
    }
  }
  return sum;
}

}  // namespace fracgraph::detail
