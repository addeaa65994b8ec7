#pragma once

// Run configuration: `key = value` lines grouped under `[section]` headers,
// `#` or `;` comments.  Every value remembers its line for diagnostics.
//
//   [graph]   topology = star|tree|loop, alpha, lengths = v1, v2, ..., weights = ...
//   [lengths] <edge id> = value         (alternative to graph.lengths)
//   [weights] <weight key> = value      (alternative to graph.weights)
//   [grid]    n, grading
//   [check]   trials, tol, seed, levels
//   [solve]   k1, b1, c1, tol, strict, sweeps
//
// List order for graph.lengths: star edges 1..N; tree 1, 11, 12, 111, 112,
// 121, 122; loop 1..4.  For graph.weights: star 1..N; tree 1, 11, 12, 11',
// 12', 111, 112, 121, 122; loop 1, 2, 3, 2', 3', 4.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracgraph/graph.hpp"

namespace fracgraph {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& field, const std::string& msg);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Raw parsed file: section.key -> (value, line).
class ConfigFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };
  static ConfigFile parse(std::istream& in, const std::string& source);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const Entry* find(const std::string& key) const;
  /// Keys of one section, in file order, without the section prefix.
  std::vector<std::string> section_keys(const std::string& section) const;
  const std::string& source() const noexcept { return source_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

struct CheckSettings {
  int trials = 50;
  double tol = 1e-3;
  std::uint64_t seed = 42;
  int levels = 3;  // doubling ladder ending at grid.n
};

struct SolveSettings {
  double k1 = 1.0;
  double b1 = 1.0;
  double c1 = 1.0;
  double tol = 1e-2;
  bool strict = false;
  int sweeps = 20;
};

struct RunConfig {
  Topology topology = Topology::star;
  double alpha = 0.5;
  std::map<std::string, double> lengths;  // by edge id
  std::map<std::string, double> weights;  // by weight key
  GridSpec grid{};
  CheckSettings check{};
  SolveSettings solve{};
  std::string source;
};

/// Reads and validates a run configuration; throws ConfigError with file,
/// line and field on any problem.
RunConfig read_run_config(const ConfigFile& file);
RunConfig load_run_config(const std::string& path);

/// Validates every numeric field against the module preconditions (including
/// constructing the graph).  Throws ConfigError.
void validate(const RunConfig& cfg);

MetricGraph make_graph(const RunConfig& cfg);

}  // namespace fracgraph
