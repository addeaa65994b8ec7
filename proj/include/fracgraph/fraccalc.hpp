#pragma once

// Riemann-Liouville fractional integrals and derivatives of order 0 < alpha < 1
// on sampled functions over a single interval [0, L].
//
// Functions are carried as a bounded remainder sampled on a graded grid plus
// a short list of endpoint power terms c * dist^p (p < 0).  Operators act on
// the remainder by piecewise-linear product integration and on the power
// terms in closed form, so endpoint singularities are never sampled.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace fracgraph {

using cplx = std::complex<double>;

/// Gamma function for x > 0; throws DomainError otherwise.
double gamma(double x);

/// 1/Gamma(x) for any real x, zero at the poles.
double rgamma(double x);

/// Fractional order, strictly inside (0, 1).
class FracOrder {
 public:
  explicit FracOrder(double alpha);
  double value() const noexcept { return alpha_; }
  FracOrder complement() const { return FracOrder(1.0 - alpha_); }

 private:
  double alpha_;
};

struct GridSpec {
  int intervals = 2048;
  double grading = 2.0;
};

/// Strictly increasing nodes 0 = x_0 < ... < x_n = L, at least 8 nodes.
class Grid {
 public:
  Grid(std::vector<double> nodes, double grading = 1.0);

  /// Two-sided graded grid: x_i = (L/2) (2i/n)^g on the left half, mirrored
  /// on the right half, so nodes cluster at both endpoints.
  static std::shared_ptr<const Grid> graded(double length, int intervals, double grading = 2.0);
  static std::shared_ptr<const Grid> graded(double length, const GridSpec& spec) {
    return graded(length, spec.intervals, spec.grading);
  }

  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t intervals() const noexcept { return nodes_.size() - 1; }
  double length() const noexcept { return nodes_.back(); }
  double grading() const noexcept { return grading_; }

  /// Grid of the mirrored coordinate y = L - x (nodes reversed).
  std::shared_ptr<const Grid> reflected() const;

  bool operator==(const Grid& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<double> nodes_;
  double grading_;
};

enum class Endpoint { at_zero, at_length };

inline Endpoint opposite(Endpoint e) {
  return e == Endpoint::at_zero ? Endpoint::at_length : Endpoint::at_zero;
}

/// coefficient * dist^exponent, dist measured from the owning endpoint.
struct PowerTerm {
  cplx coefficient;
  double exponent;
};

/// Sampled complex function on a grid with optional endpoint power terms.
///
/// values()[i] is the remainder f(x_i) - (sum of power terms at x_i).  At an
/// endpoint that carries power terms the stored value is the limit of the
/// remainder there.  Terms with exponent >= 0 are folded into the samples on
/// construction, terms with equal exponents are merged, and terms whose
/// coefficient cancels to rounding level are dropped.
class GridFunction {
 public:
  GridFunction(std::shared_ptr<const Grid> grid, std::vector<cplx> values,
               std::vector<PowerTerm> at_zero = {}, std::vector<PowerTerm> at_length = {});

  static GridFunction zero(std::shared_ptr<const Grid> grid);
  static GridFunction sample(std::shared_ptr<const Grid> grid, const std::function<cplx(double)>& f);

  const Grid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx remainder(std::size_t i) const { return values_[i]; }

  const std::vector<PowerTerm>& terms(Endpoint e) const {
    return e == Endpoint::at_zero ? at_zero_ : at_length_;
  }
  bool singular_at(Endpoint e) const { return !terms(e).empty(); }

  /// Sum of the power terms of one endpoint at node i (i must not be that endpoint's node).
  cplx terms_at(Endpoint e, std::size_t i) const;

  /// Full value at node i; infinite at an endpoint carrying power terms.
  cplx at(std::size_t i) const;

  /// Trace semantics used by vertex conditions: the coefficient of the most
  /// singular endpoint term when present, the sample value otherwise.
  cplx trace(Endpoint e) const;

  /// Same function in the mirrored coordinate, on the given mirrored grid.
  GridFunction reflected(std::shared_ptr<const Grid> mirrored_grid) const;

  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;
  GridFunction operator*(cplx scale) const;
  friend GridFunction operator*(cplx scale, const GridFunction& f) { return f * scale; }

 private:
  void normalize();

  std::shared_ptr<const Grid> grid_;
  std::vector<cplx> values_;
  std::vector<PowerTerm> at_zero_;
  std::vector<PowerTerm> at_length_;
};

// ---------------------------------------------------------------------------
// Free operations.  Each call builds its quadrature weights from scratch; use
// FracCalculus to reuse derivative weights across many functions.

GridFunction frac_integral_left(const GridFunction& f, double order);
GridFunction frac_integral_right(const GridFunction& f, double order);
inline GridFunction frac_integral_left(const GridFunction& f, FracOrder a) {
  return frac_integral_left(f, a.value());
}
inline GridFunction frac_integral_right(const GridFunction& f, FracOrder a) {
  return frac_integral_right(f, a.value());
}

/// Left/right derivative in the form valid for absolutely continuous input:
/// boundary term y(0)/x^a (resp. y(L)/(L-x)^a) plus the kernel integral of the
/// exact derivative of the piecewise-linear interpolant.
GridFunction frac_deriv_left(const GridFunction& y, FracOrder alpha);
GridFunction frac_deriv_right(const GridFunction& y, FracOrder alpha);

/// d/dx of I^{1-a} y by non-uniform central differences.  Independent
/// cross-check path for frac_deriv_left; accepts bounded input only and
/// carries no endpoint terms (endpoint values are one-sided differences).
GridFunction frac_deriv_left_definition(const GridFunction& y, FracOrder alpha);

struct EndpointLimit {
  Endpoint kind;
  cplx value;
  double error_estimate;
  bool converged;
};

/// One-sided limit of I^{1-a} f at the named endpoint (I_{0+} at x = +0,
/// I_{L-} at x = L-0), by extrapolating the values at the three nodes nearest
/// the endpoint.  Not converged when the two neighbouring extrapolants differ
/// by more than tol, or when the limit is infinite.
EndpointLimit endpoint_trace(const GridFunction& f, FracOrder alpha, Endpoint which, double tol = 1e-8);

/// Reusable derivative operators on one grid.  Weight tables are built on
/// first use and shared by all later calls; safe to use from several threads.
class FracCalculus {
 public:
  FracCalculus(std::shared_ptr<const Grid> grid, FracOrder alpha);

  const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
  FracOrder order() const noexcept { return alpha_; }

  GridFunction deriv_left(const GridFunction& y) const;
  GridFunction deriv_right(const GridFunction& y) const;
  /// (D_{0+}^a + D_{L-}^a) y.
  GridFunction deriv_sum(const GridFunction& y) const { return deriv_left(y) + deriv_right(y); }

  struct Table;

 private:
  const Table& left_table() const;
  const Table& right_table() const;

  std::shared_ptr<const Grid> grid_;
  std::shared_ptr<const Grid> mirrored_;
  FracOrder alpha_;
  mutable std::once_flag left_once_, right_once_;
  mutable std::shared_ptr<const Table> left_, right_;
};

}  // namespace fracgraph
