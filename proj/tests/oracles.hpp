#pragma once

// Independent reference values for the unit tests: adaptive quadrature after
// removing the kernel singularity by substitution, and extended-precision
// power series.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <functional>

namespace oracle {

using Fn = std::function<double(double)>;

// u = (x - t)^a turns (x - t)^{a-1} dt into du / a.
inline double rl_left(const Fn& f, double a, double x) {
  if (x == 0.0) return 0.0;
  auto g = [&](double u) { return f(x - std::pow(u, 1.0 / a)); };
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, std::pow(x, a), 15, 1e-14);
  return v / (a * std::tgamma(a));
}

inline double rl_right(const Fn& f, double a, double x, double len) {
  if (x == len) return 0.0;
  auto g = [&](double u) { return f(x + std::pow(u, 1.0 / a)); };
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, std::pow(len - x, a), 15, 1e-14);
  return v / (a * std::tgamma(a));
}

/// int_lo^hi f with endpoint singularities allowed.
inline double integrate(const Fn& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, 1e-13);
}

template <unsigned Digits>
double ml_series_at(double a, double b, double z) {
  using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
  big sum = 0;
  big zn = 1;
  const big zz = z;
  for (int n = 0; n < 6000; ++n) {
    const big term = zn / boost::multiprecision::tgamma(big(a) * n + big(b));
    sum += term;
    if (n > 10 && abs(term) < big(1e-40) * (abs(sum) + big(1e-300))) break;
    zn *= zz;
  }
  return static_cast<double>(sum);
}

/// E_{a,b}(z) by its power series in extended precision.  For z < 0 the
/// terms grow to about exp(|z|^{1/a}) before cancelling, so the working
/// precision follows that size.
inline double ml_series(double a, double b, double z) {
  const double lost = z < 0 ? std::pow(-z, 1.0 / a) / std::log(10.0) : 0.0;
  if (lost < 60) return ml_series_at<100>(a, b, z);
  if (lost < 200) return ml_series_at<250>(a, b, z);
  return ml_series_at<500>(a, b, z);
}

}  // namespace oracle
