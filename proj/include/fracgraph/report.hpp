#pragma once

// Text reports, CSV tables and atomic file output.

#include <string>
#include <vector>

#include "fracgraph/eigensolver.hpp"
#include "fracgraph/operator.hpp"

namespace fracgraph {

/// Scientific notation with 12 significant digits ("1.23456789012e-03").
std::string sci(double v);

/// Writes via a temporary file in the same directory, then renames over
/// `path`.  Throws std::runtime_error on failure.
void write_atomic(const std::string& path, const std::string& content);

/// Comma-separated table with a '#' comment line describing units.
class CsvTable {
 public:
  CsvTable(std::string units_comment, std::vector<std::string> columns);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::string units_;
  std::vector<std::string> columns_;
  std::string body_;
};

std::string format_report(const VerificationReport& r, const MetricGraph& g);
std::string format_report(const SolutionReport& r, const MetricGraph& g);

}  // namespace fracgraph
