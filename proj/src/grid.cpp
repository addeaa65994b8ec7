#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracgraph/errors.hpp"
#include "fracgraph/fraccalc.hpp"

namespace fracgraph {

Grid::Grid(std::vector<double> nodes, double grading) : nodes_(std::move(nodes)), grading_(grading) {
  if (nodes_.size() < 8) throw DomainError("grid needs at least 8 nodes");
  if (nodes_.front() != 0.0) throw DomainError("grid must start at 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      std::ostringstream os;
      os << "grid nodes not strictly increasing at index " << i;
      throw DomainError(os.str());
    }
  }
  if (!(grading_ >= 1.0)) throw DomainError("grading exponent must be >= 1");
}

std::shared_ptr<const Grid> Grid::graded(double length, int intervals, double grading) {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("edge length must be positive");
  if (intervals < 7) throw DomainError("grid needs at least 8 nodes");
  if (!(grading >= 1.0)) throw DomainError("grading exponent must be >= 1");
  const auto n = static_cast<std::size_t>(intervals);
  const double half = 0.5 * static_cast<double>(intervals);
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double di = static_cast<double>(i);
    if (di <= half) {
      x[i] = 0.5 * length * std::pow(di / half, grading);
    } else {
      x[i] = length - 0.5 * length * std::pow((static_cast<double>(n) - di) / half, grading);
    }
  }
  x.front() = 0.0;
  x.back() = length;
  return std::make_shared<const Grid>(std::move(x), grading);
}

std::shared_ptr<const Grid> Grid::reflected() const {
  const double len = length();
  std::vector<double> y(nodes_.size());
  const std::size_t n = intervals();
  for (std::size_t i = 0; i <= n; ++i) y[i] = len - nodes_[n - i];
  y.front() = 0.0;
  y.back() = len;
  return std::make_shared<const Grid>(std::move(y), grading_);
}

}  // namespace fracgraph
