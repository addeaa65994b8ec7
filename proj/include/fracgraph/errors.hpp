#pragma once

#include <stdexcept>
#include <string>

namespace fracgraph {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal consistency check failed (e.g. two evaluation regimes disagree).
class AccuracyLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A one-sided limit that does not settle under extrapolation.
class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral constraint chains cannot be satisfied together.
class InconsistentConstraints : public std::runtime_error {
 public:
  InconsistentConstraints(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace fracgraph
