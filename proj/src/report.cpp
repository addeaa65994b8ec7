#include "fracgraph/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace fracgraph {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path);
  }
}

CsvTable::CsvTable(std::string units_comment, std::vector<std::string> columns)
    : units_(std::move(units_comment)), columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("CSV row has wrong number of cells");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
}

std::string CsvTable::str() const {
  std::string out = "# " + units_ + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  return out + "\n" + body_;
}

namespace {

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

void graph_block(std::ostringstream& os, const MetricGraph& g) {
  os << "topology: " << to_string(g.topology()) << "\n";
  os << "alpha: " << sci(g.order().value()) << "\n";
  os << "edges:\n";
  for (const auto& e : g.edges())
    os << "  " << e.id << " length=" << sci(e.length) << " from=" << e.start_vertex << " to=" << e.end_vertex << "\n";
  os << "vertex conditions:\n";
  for (const auto& c : g.conditions()) {
    os << "  " << c.vertex << " " << to_string(c.kind) << ":";
    for (const auto& inc : c.incidences)
      os << " " << inc.edge << (inc.endpoint == Endpoint::at_zero ? "@0" : "@l") << "(w=" << sci(inc.weight) << ")";
    os << "\n";
  }
}

}  // namespace

std::string format_report(const VerificationReport& r, const MetricGraph& g) {
  std::ostringstream os;
  os << "# self-adjointness check\n";
  graph_block(os, g);
  os << "grid_n: " << r.grid_n << "\n";
  os << "tol: " << sci(r.tol) << "\n";
  os << "trials:\n";
  os << "  trial family |omega| |boundary_form| |omega-boundary_form| verdict\n";
  auto row = [&](const TrialRow& t) {
    os << "  " << t.trial << " " << to_string(t.family) << " " << sci(t.omega_abs) << " " << sci(t.boundary_abs) << " "
       << sci(t.discrepancy) << " " << verdict(t.passed) << "\n";
  };
  for (const auto& t : r.rows) row(t);
  os << "violation (singular term at vertex " << r.violation_vertex << ", needs |omega| > 10 tol):\n";
  row(r.violation);
  int failed = 0;
  for (const auto& t : r.rows) failed += t.passed ? 0 : 1;
  os << "failed_trials: " << failed << "\n";
  os << "result: " << verdict(r.passed) << "\n";
  return os.str();
}

std::string format_report(const SolutionReport& r, const MetricGraph& g) {
  std::ostringstream os;
  os << "# eigen-solution check\n";
  graph_block(os, g);
  os << "grid_n: " << r.grid_n << "\n";
  os << "tol: " << sci(r.tol) << "\n";
  os << "k1: " << sci(r.params.reference_k) << "\n";
  os << "edges:\n";
  os << "  edge k b c residual volterra_distance volterra\n";
  for (const auto& e : r.rows) {
    os << "  " << e.edge << " " << sci(e.constants.k) << " " << sci(e.constants.b) << " " << sci(e.constants.c) << " "
       << sci(e.residual) << " " << sci(e.agreement) << " " << (e.volterra_converged ? "converged" : "not-converged")
       << " (" << e.volterra_note << ")\n";
  }
  os << "constraints:\n";
  os << "  k_chain_spread: " << sci(r.k_chain) << "\n";
  os << "  b_chain_spread: " << sci(r.b_chain) << "\n";
  os << "  c_chain_spread: " << sci(r.c_chain) << "\n";
  os << "  sum_b_over_w: " << sci(r.params.flux_residual) << "\n";
  os << "  sum_b_over_lk: " << sci(r.params.k_sum_residual) << "\n";
  os << "  consistent: " << (r.params.consistent ? "yes" : "no") << "\n";
  os << "vertex conditions (singular-coefficient traces):\n";
  for (const auto& v : r.conditions.vertices) {
    os << "  " << v.vertex << " " << to_string(v.kind) << " continuity=" << sci(v.continuity) << " flux=" << sci(v.flux)
       << " dirichlet=" << sci(v.dirichlet) << " " << (v.satisfied ? "satisfied" : "violated") << "\n";
  }
  os << "residuals_within_tol: " << (r.residuals_ok ? "yes" : "no") << "\n";
  os << "result: " << verdict(r.passed) << "\n";
  return os.str();
}

}  // namespace fracgraph
