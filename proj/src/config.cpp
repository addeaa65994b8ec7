#include "fracgraph/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fracgraph/errors.hpp"

namespace fracgraph {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_number(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field, const std::string& msg)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": " + field) + ": " + msg),
      line_(line),
      field_(field) {}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile f;
  f.source_ = source;
  std::string section;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, lineno, "", "unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(source, lineno, "", "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, lineno, "", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(source, lineno, "", "missing key before '='");
    if (section.empty()) throw ConfigError(source, lineno, key, "key outside any [section]");
    const std::string full = section + "." + key;
    if (f.entries_.count(full))
      throw ConfigError(source, lineno, full, "duplicate key (first set on line " +
                                                  std::to_string(f.entries_[full].line) + ")");
    f.entries_[full] = {trim(line.substr(eq + 1)), lineno};
    f.order_.push_back(full);
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  return parse(in, path);
}

const ConfigFile::Entry* ConfigFile::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> ConfigFile::section_keys(const std::string& section) const {
  std::vector<std::string> keys;
  const std::string prefix = section + ".";
  for (const auto& k : order_)
    if (k.rfind(prefix, 0) == 0) keys.push_back(k.substr(prefix.size()));
  return keys;
}

void ConfigFile::fail(const std::string& key, const std::string& msg) const {
  const Entry* e = find(key);
  throw ConfigError(source_, e ? e->line : 0, key, msg);
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  double v = 0.0;
  if (!parse_number(e->value, v) || !std::isfinite(v)) fail(key, "expected a finite number, got '" + e->value + "'");
  return v;
}

long long ConfigFile::get_int(const std::string& key, long long fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  long long v = 0;
  const std::string& t = e->value;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) fail(key, "expected an integer, got '" + t + "'");
  return v;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  const std::string v = lower(e->value);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  fail(key, "expected true or false, got '" + e->value + "'");
}

std::vector<double> ConfigFile::get_list(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return {};
  std::vector<double> out;
  std::stringstream ss(e->value);
  std::string item;
  int pos = 0;
  while (std::getline(ss, item, ',')) {
    ++pos;
    double v = 0.0;
    if (!parse_number(item, v) || !std::isfinite(v))
      fail(key, "entry " + std::to_string(pos) + " is not a finite number: '" + trim(item) + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

namespace {

std::vector<std::string> edge_ids(Topology t, std::size_t star_size) {
  if (t == Topology::tree) return kTreeEdges;
  if (t == Topology::loop) return {"1", "2", "3", "4"};
  std::vector<std::string> ids;
  for (std::size_t j = 1; j <= star_size; ++j) ids.push_back(std::to_string(j));
  return ids;
}

std::vector<std::string> weight_keys(Topology t, std::size_t star_size) {
  if (t == Topology::tree) return kTreeWeightKeys;
  if (t == Topology::loop) return kLoopWeightKeys;
  return edge_ids(t, star_size);
}

// Fills `out` from either the inline list `list_key` or the keyed section.
void read_keyed(const ConfigFile& f, const std::string& list_key, const std::string& section,
                const std::vector<std::string>& keys, std::map<std::string, double>& out) {
  const bool has_list = f.has(list_key);
  const auto section_entries = f.section_keys(section);
  if (has_list && !section_entries.empty())
    f.fail(list_key, "given both inline and in [" + section + "]; use one");
  if (has_list) {
    const auto v = f.get_list(list_key);
    if (v.size() != keys.size())
      f.fail(list_key, "expected " + std::to_string(keys.size()) + " entries, got " + std::to_string(v.size()));
    for (std::size_t j = 0; j < keys.size(); ++j) out[keys[j]] = v[j];
    return;
  }
  if (section_entries.empty()) throw ConfigError(f.source(), 0, list_key, "missing (no inline list and no [" + section + "] section)");
  for (const auto& k : section_entries) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) f.fail(section + "." + k, "unknown key for this topology");
    out[k] = f.get_double(section + "." + k, 0.0);
  }
  for (const auto& k : keys)
    if (!out.count(k)) throw ConfigError(f.source(), 0, section + "." + k, "missing");
}

const std::vector<std::string> kKnownKeys{
    "graph.topology", "graph.alpha", "graph.lengths", "graph.weights", "grid.n",     "grid.grading",
    "check.trials",   "check.tol",   "check.seed",    "check.levels",  "solve.k1",   "solve.b1",
    "solve.c1",       "solve.tol",   "solve.strict",  "solve.sweeps"};

}  // namespace

RunConfig read_run_config(const ConfigFile& f) {
  RunConfig cfg;
  cfg.source = f.source();
  for (const auto& section : {"graph", "grid", "check", "solve"})
    for (const auto& k : f.section_keys(section)) {
      const std::string full = std::string(section) + "." + k;
      if (std::find(kKnownKeys.begin(), kKnownKeys.end(), full) == kKnownKeys.end()) f.fail(full, "unknown key");
    }
  const std::string topo = lower(f.get_string("graph.topology", ""));
  if (topo.empty()) throw ConfigError(f.source(), 0, "graph.topology", "missing");
  if (topo == "star") {
    cfg.topology = Topology::star;
  } else if (topo == "tree") {
    cfg.topology = Topology::tree;
  } else if (topo == "loop") {
    cfg.topology = Topology::loop;
  } else {
    f.fail("graph.topology", "expected star, tree or loop, got '" + topo + "'");
  }
  if (!f.has("graph.alpha")) throw ConfigError(f.source(), 0, "graph.alpha", "missing");
  cfg.alpha = f.get_double("graph.alpha", 0.5);

  std::size_t star_size = 0;
  if (cfg.topology == Topology::star) {
    if (f.has("graph.lengths")) {
      star_size = f.get_list("graph.lengths").size();
    } else {
      star_size = f.section_keys("lengths").size();
    }
  }
  read_keyed(f, "graph.lengths", "lengths", edge_ids(cfg.topology, star_size), cfg.lengths);
  read_keyed(f, "graph.weights", "weights", weight_keys(cfg.topology, star_size), cfg.weights);

  auto as_int = [&](const std::string& key, long long fallback, long long lo, long long hi) {
    const long long v = f.get_int(key, fallback);
    if (v < lo || v > hi) f.fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  };
  cfg.grid.intervals = static_cast<int>(as_int("grid.n", cfg.grid.intervals, 7, 1 << 16));
  cfg.grid.grading = f.get_double("grid.grading", cfg.grid.grading);
  cfg.check.trials = static_cast<int>(as_int("check.trials", cfg.check.trials, 1, 100000));
  cfg.check.tol = f.get_double("check.tol", cfg.check.tol);
  cfg.check.seed = static_cast<std::uint64_t>(as_int("check.seed", static_cast<long long>(cfg.check.seed), 0,
                                                     std::numeric_limits<long long>::max()));
  cfg.check.levels = static_cast<int>(as_int("check.levels", cfg.check.levels, 1, 8));
  cfg.solve.k1 = f.get_double("solve.k1", cfg.solve.k1);
  cfg.solve.b1 = f.get_double("solve.b1", cfg.solve.b1);
  cfg.solve.c1 = f.get_double("solve.c1", cfg.solve.c1);
  cfg.solve.tol = f.get_double("solve.tol", cfg.solve.tol);
  cfg.solve.strict = f.get_bool("solve.strict", cfg.solve.strict);
  cfg.solve.sweeps = static_cast<int>(as_int("solve.sweeps", cfg.solve.sweeps, 1, 1000));

  // Field-level checks that can point at a line.
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) f.fail("graph.alpha", "must lie strictly between 0 and 1");
  if (!(cfg.grid.grading >= 1.0)) f.fail("grid.grading", "must be >= 1");
  if (!(cfg.check.tol > 0.0)) f.fail("check.tol", "must be positive");
  if (!(cfg.solve.tol > 0.0)) f.fail("solve.tol", "must be positive");
  for (const auto& [id, l] : cfg.lengths)
    if (!(l > 0.0)) f.fail(f.has("graph.lengths") ? "graph.lengths" : "lengths." + id, "edge " + id + ": length must be positive");
  for (const auto& [k, w] : cfg.weights)
    if (w == 0.0) f.fail(f.has("graph.weights") ? "graph.weights" : "weights." + k, "weight " + k + " must be nonzero");
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::string& path) { return read_run_config(ConfigFile::load(path)); }

MetricGraph make_graph(const RunConfig& cfg) {
  const FracOrder order(cfg.alpha);
  switch (cfg.topology) {
    case Topology::star: {
      std::vector<double> l, w;
      for (std::size_t j = 1; j <= cfg.lengths.size(); ++j) {
        l.push_back(cfg.lengths.at(std::to_string(j)));
        w.push_back(cfg.weights.at(std::to_string(j)));
      }
      return build_star(order, l, w);
    }
    case Topology::tree:
      return build_tree(order, cfg.lengths, cfg.weights);
    case Topology::loop:
      return build_loop(order, {cfg.lengths.at("1"), cfg.lengths.at("2"), cfg.lengths.at("3"), cfg.lengths.at("4")},
                        cfg.weights);
  }
  throw DomainError("unknown topology");
}

void validate(const RunConfig& cfg) {
  auto bad = [&](const std::string& field, const std::string& msg) { throw ConfigError(cfg.source, 0, field, msg); };
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) bad("alpha", "must lie strictly between 0 and 1");
  if (cfg.grid.intervals < 7) bad("grid.n", "must be at least 7");
  if (!(cfg.grid.grading >= 1.0)) bad("grid.grading", "must be >= 1");
  if (!(cfg.check.tol > 0.0)) bad("check.tol", "must be positive");
  if (cfg.check.trials < 1) bad("check.trials", "must be positive");
  if (cfg.check.levels < 1 || (cfg.grid.intervals >> (cfg.check.levels - 1)) < 7)
    bad("check.levels", "ladder would go below 7 intervals");
  if (!(cfg.solve.tol > 0.0)) bad("solve.tol", "must be positive");
  if (cfg.solve.sweeps < 1) bad("solve.sweeps", "must be positive");
  try {
    make_graph(cfg);
  } catch (const DomainError& e) {
    bad("graph", e.what());
  }
}

}  // namespace fracgraph
