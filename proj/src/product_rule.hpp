#pragma once

// Kernel moments for piecewise-linear product integration.

#include <cstddef>
#include <span>

#include "fracgraph/fraccalc.hpp"

namespace fracgraph::detail {

/// Finite-part value of int_0^h u^e du (log h when e = -1).
double power_integral(double h, double e);

/// Weights of the endpoint values of a linear function g on [a, a+h] in
/// int_a^{a+h} u^e g(u) du; `far` multiplies g(a+h), `near` multiplies g(a).
/// Accurate for h << a (no cancellation) and finite-part when a = 0, e <= -1.
struct CellWeights {
  double far;
  double near;
};
CellWeights cell_weights(double a, double h, double e);

/// int_a^{a+h} u^e du, finite-part when a = 0 and e <= -1.
double cell_moment(double a, double h, double e);

/// sum over cells left of node i of int (x_i - t)^e f_lin(t) dt.
cplx kernel_row(const Grid& g, std::size_t i, double e, std::span<const cplx> f);

/// int_0^x u^s (d + u)^t du for x > 0, d > 0, s > -1 (tanh-sinh quadrature).
double cross_integral(double x, double d, double s, double t);

/// int_0^L f_lin(x) dist(x)^e dx with dist measured from the given endpoint.
cplx weighted_integral(const Grid& g, std::span<const cplx> f, Endpoint from, double e);

}  // namespace fracgraph::detail
