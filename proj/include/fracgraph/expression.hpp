#pragma once

// Sums of power functions in t: "1", "t", "3*t^2 - 0.5 t^0.5 + 2", "t^-0.5".
// Exponents must exceed -1 so every term is integrable at t = 0.

#include <string>
#include <vector>

#include "fracgraph/fraccalc.hpp"

namespace fracgraph {

struct Monomial {
  double coefficient;
  double power;
};

/// Throws DomainError with the offending position on malformed input.
std::vector<Monomial> parse_expression(const std::string& text);

/// Negative powers become power terms at x = 0; the rest is sampled.
GridFunction to_grid_function(const std::vector<Monomial>& expr, std::shared_ptr<const Grid> grid);

}  // namespace fracgraph
