#include <cmath>
#include <sstream>

#include "fracgraph/errors.hpp"
#include "fracgraph/fraccalc.hpp"

namespace fracgraph {

double gamma(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gamma: argument must be positive, got " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::nearbyint(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "fractional order must lie in (0, 1), got " << alpha;
    throw DomainError(os.str());
  }
}

}  // namespace fracgraph
