#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracgraph/errors.hpp"
#include "fracgraph/fraccalc.hpp"
#include "product_rule.hpp"

namespace fracgraph {

namespace {

constexpr double kExpTol = 1e-12;

void require_integrable(double p, const char* what) {
  if (!(p > -1.0)) {
    std::ostringstream os;
    os << what << ": endpoint term with exponent " << p << " is not integrable";
    throw DomainError(os.str());
  }
}

// I_{0+}^order applied to f on its own grid.
GridFunction integral_left_impl(const GridFunction& f, double order) {
  if (!(order > 0.0)) throw DomainError("integral order must be positive");
  const Grid& g = f.grid();
  const std::size_t n = g.intervals();
  const double len = g.length();
  const double e = order - 1.0;
  const double inv_gamma = 1.0 / gamma(order);

  std::vector<cplx> out(n + 1);
  for (std::size_t i = 1; i <= n; ++i) out[i] = inv_gamma * detail::kernel_row(g, i, e, f.values());

  std::vector<PowerTerm> left;
  for (const auto& t : f.terms(Endpoint::at_zero)) {
    require_integrable(t.exponent, "fractional integral");
    left.push_back({t.coefficient * gamma(t.exponent + 1.0) / gamma(t.exponent + 1.0 + order),
                    t.exponent + order});
  }

  std::vector<PowerTerm> right;
  for (const auto& t : f.terms(Endpoint::at_length)) {
    const double q = t.exponent;
    require_integrable(q, "fractional integral");
    const double s = q + order;
    if (std::abs(s) <= kExpTol)
      throw DomainError("fractional integral of a far endpoint term diverges logarithmically");
    // Leading singular behaviour at x = L when s < 0; the regular part at L is
    // the analytic continuation L^s / (s Gamma(order)).
    const double lead = s < 0.0 ? gamma(-s) / gamma(-q) : 0.0;
    if (s < 0.0) right.push_back({t.coefficient * lead, s});
    for (std::size_t i = 1; i < n; ++i) {
      const double d = len - g[i];
      double v = inv_gamma * detail::cross_integral(g[i], d, e, q);
      if (s < 0.0) v -= lead * std::pow(d, s);
      out[i] += t.coefficient * v;
    }
    if (s < 0.0) out[0] -= t.coefficient * lead * std::pow(len, s);
    out[n] += t.coefficient * inv_gamma * std::pow(len, s) / s;
  }
  return GridFunction(f.grid_ptr(), std::move(out), std::move(left), std::move(right));
}

GridFunction mirror(const GridFunction& f) { return f.reflected(f.grid().reflected()); }

}  // namespace

GridFunction frac_integral_left(const GridFunction& f, double order) { return integral_left_impl(f, order); }

GridFunction frac_integral_right(const GridFunction& f, double order) {
  return integral_left_impl(mirror(f), order).reflected(f.grid_ptr());
}

// ---------------------------------------------------------------------------

struct FracCalculus::Table {
  // m0[i(i-1)/2 + k] = int over cell k of (x_i - t)^{-alpha} dt, k < i.
  std::vector<double> m0;
};

namespace {

std::shared_ptr<const FracCalculus::Table> build_table(const Grid& g, double alpha);

}  // namespace

FracCalculus::FracCalculus(std::shared_ptr<const Grid> grid, FracOrder alpha)
    : grid_(std::move(grid)), mirrored_(grid_->reflected()), alpha_(alpha) {}

namespace {

std::shared_ptr<const FracCalculus::Table> build_table(const Grid& g, double alpha) {
  auto table = std::make_shared<FracCalculus::Table>();
  const std::size_t n = g.intervals();
  table->m0.resize(n * (n + 1) / 2);
  const double e = -alpha;
  for (std::size_t i = 1; i <= n; ++i) {
    double* row = table->m0.data() + i * (i - 1) / 2;
    const double xi = g[i];
    for (std::size_t k = 0; k < i; ++k) {
      const double h = g[k + 1] - g[k];
      row[k] = detail::cell_moment(k + 1 == i ? 0.0 : xi - g[k + 1], h, e);
    }
  }
  return table;
}

// D_{0+}^alpha y with precomputed moments on y's grid.
GridFunction deriv_left_impl(const GridFunction& y, double alpha, const std::vector<double>& m0) {
  const Grid& g = y.grid();
  const std::size_t n = g.intervals();
  const double len = g.length();
  const double inv_g1a = 1.0 / gamma(1.0 - alpha);
  const auto r = y.values();

  std::vector<cplx> slope(n);
  for (std::size_t k = 0; k < n; ++k) slope[k] = (r[k + 1] - r[k]) / (g[k + 1] - g[k]);

  std::vector<cplx> out(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const double* row = m0.data() + i * (i - 1) / 2;
    cplx s{};
    for (std::size_t k = 0; k < i; ++k) s += slope[k] * row[k];
    out[i] = inv_g1a * s;
  }

  std::vector<PowerTerm> left{{r[0] * inv_g1a, -alpha}};
  for (const auto& t : y.terms(Endpoint::at_zero)) {
    require_integrable(t.exponent, "fractional derivative");
    left.push_back({t.coefficient * gamma(t.exponent + 1.0) * rgamma(t.exponent + 1.0 - alpha),
                    t.exponent - alpha});
  }

  std::vector<PowerTerm> right;
  for (const auto& t : y.terms(Endpoint::at_length)) {
    const double q = t.exponent;
    require_integrable(q, "fractional derivative");
    if (std::abs(q - alpha) <= kExpTol)
      throw DomainError("fractional derivative of a far endpoint term diverges logarithmically");
    left.push_back({t.coefficient * std::pow(len, q) * inv_g1a, -alpha});
    const double lead = q < alpha ? -q * gamma(alpha - q) / gamma(1.0 - q) : 0.0;
    if (q < alpha) right.push_back({t.coefficient * lead, q - alpha});
    for (std::size_t i = 1; i < n; ++i) {
      const double d = len - g[i];
      double v = -q * inv_g1a * detail::cross_integral(g[i], d, -alpha, q - 1.0);
      if (q < alpha) v -= lead * std::pow(d, q - alpha);
      out[i] += t.coefficient * v;
    }
    if (q < alpha) out[0] -= t.coefficient * lead * std::pow(len, q - alpha);
    out[n] += t.coefficient * (-q * inv_g1a * std::pow(len, q - alpha) / (q - alpha));
  }
  return GridFunction(y.grid_ptr(), std::move(out), std::move(left), std::move(right));
}

}  // namespace

const FracCalculus::Table& FracCalculus::left_table() const {
  std::call_once(left_once_, [this] { left_ = build_table(*grid_, alpha_.value()); });
  return *left_;
}

const FracCalculus::Table& FracCalculus::right_table() const {
  std::call_once(right_once_, [this] { right_ = build_table(*mirrored_, alpha_.value()); });
  return *right_;
}

GridFunction FracCalculus::deriv_left(const GridFunction& y) const {
  if (y.grid_ptr() != grid_ && !(y.grid() == *grid_)) throw DomainError("function is not on this grid");
  return deriv_left_impl(y, alpha_.value(), left_table().m0);
}

GridFunction FracCalculus::deriv_right(const GridFunction& y) const {
  if (y.grid_ptr() != grid_ && !(y.grid() == *grid_)) throw DomainError("function is not on this grid");
  return deriv_left_impl(y.reflected(mirrored_), alpha_.value(), right_table().m0).reflected(y.grid_ptr());
}

GridFunction frac_deriv_left(const GridFunction& y, FracOrder alpha) {
  return FracCalculus(y.grid_ptr(), alpha).deriv_left(y);
}

GridFunction frac_deriv_right(const GridFunction& y, FracOrder alpha) {
  return FracCalculus(y.grid_ptr(), alpha).deriv_right(y);
}

GridFunction frac_deriv_left_definition(const GridFunction& y, FracOrder alpha) {
  if (y.singular_at(Endpoint::at_zero) || y.singular_at(Endpoint::at_length))
    throw DomainError("definition path accepts bounded input only");
  const auto F = frac_integral_left(y, 1.0 - alpha.value());
  const Grid& g = y.grid();
  const std::size_t n = g.intervals();
  std::vector<cplx> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = F.at(i);
  std::vector<cplx> out(n + 1);
  out[0] = (f[1] - f[0]) / (g[1] - g[0]);
  out[n] = (f[n] - f[n - 1]) / (g[n] - g[n - 1]);
  for (std::size_t i = 1; i < n; ++i) {
    const double h1 = g[i] - g[i - 1];
    const double h2 = g[i + 1] - g[i];
    out[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] + h1 / (h2 * (h1 + h2)) * f[i + 1];
  }
  return GridFunction(y.grid_ptr(), std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

// A + B x^b + C x^{b+1} through three points; returns A.
cplx extrapolate(const std::array<double, 3>& x, const std::array<cplx, 3>& v, double b) {
  double m[3][3];
  for (int r = 0; r < 3; ++r) {
    m[r][0] = 1.0;
    m[r][1] = std::pow(x[r], b);
    m[r][2] = std::pow(x[r], b + 1.0);
  }
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double det = det3(m);
  // Cramer's rule for the first unknown, real and imaginary parts together.
  const cplx num = v[0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (v[1] * m[2][2] - m[1][2] * v[2]) +
                   m[0][2] * (v[1] * m[2][1] - m[1][1] * v[2]);
  return num / det;
}

EndpointLimit trace_at_zero(const GridFunction& f, double alpha, double tol) {
  const Grid& g = f.grid();
  const double beta = 1.0 - alpha;
  const double len = g.length();
  const double inv_gamma = 1.0 / gamma(beta);
  constexpr std::size_t kNodes = 4;
  if (g.intervals() < kNodes + 1) throw DomainError("grid too coarse for endpoint extrapolation");

  std::array<cplx, kNodes> v{};
  for (std::size_t j = 0; j < kNodes; ++j)
    v[j] = inv_gamma * detail::kernel_row(g, j + 1, beta - 1.0, f.values());

  for (const auto& t : f.terms(Endpoint::at_zero)) {
    require_integrable(t.exponent, "endpoint trace");
    const double s = t.exponent + beta;
    if (s < -kExpTol) {
      const double inf = std::numeric_limits<double>::infinity();
      return {Endpoint::at_zero, {inf, 0.0}, inf, false};
    }
    const cplx c = t.coefficient * gamma(t.exponent + 1.0) / gamma(s + 1.0);
    for (std::size_t j = 0; j < kNodes; ++j) v[j] += std::abs(s) <= kExpTol ? c : c * std::pow(g[j + 1], s);
  }
  for (const auto& t : f.terms(Endpoint::at_length)) {
    require_integrable(t.exponent, "endpoint trace");
    for (std::size_t j = 0; j < kNodes; ++j)
      v[j] += t.coefficient * inv_gamma * detail::cross_integral(g[j + 1], len - g[j + 1], beta - 1.0, t.exponent);
  }

  const cplx a1 = extrapolate({g[1], g[2], g[3]}, {v[0], v[1], v[2]}, beta);
  const cplx a2 = extrapolate({g[2], g[3], g[4]}, {v[1], v[2], v[3]}, beta);
  const double err = std::abs(a1 - a2);
  return {Endpoint::at_zero, a1, err, err <= tol};
}

}  // namespace

EndpointLimit endpoint_trace(const GridFunction& f, FracOrder alpha, Endpoint which, double tol) {
  if (which == Endpoint::at_zero) return trace_at_zero(f, alpha.value(), tol);
  auto lim = trace_at_zero(mirror(f), alpha.value(), tol);
  lim.kind = Endpoint::at_length;
  return lim;
}

}  // namespace fracgraph
