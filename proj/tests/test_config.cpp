#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fracgraph/config.hpp"
#include "fracgraph/errors.hpp"
#include "fracgraph/expression.hpp"
#include "fracgraph/report.hpp"

using namespace fracgraph;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return read_run_config(ConfigFile::parse(in, "t.cfg"));
}

const char* kStar =
    "# comment\n"
    "[graph]\n"
    "topology = star\n"
    "alpha = 0.4   ; trailing comment\n"
    "lengths = 1, 1.5, 2\n"
    "weights = 1, -0.8, 1.3\n"
    "[grid]\n"
    "n = 256\n"
    "[solve]\n"
    "strict = true\n"
    "k1 = 2\n";

// Returns (line, field) of the ConfigError raised by `text`.
std::pair<int, std::string> error_of(const std::string& text) {
  try {
    validate(parse(text));
  } catch (const ConfigError& e) {
    return {e.line(), e.field()};
  }
  return {-1, ""};
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("star configuration with list values and defaults") {
    const auto c = parse(kStar);
    CHECK(c.topology == Topology::star);
    CHECK(c.alpha == 0.4);
    CHECK(c.lengths.at("2") == 1.5);
    CHECK(c.weights.at("2") == -0.8);
    CHECK(c.grid.intervals == 256);
    CHECK(c.grid.grading == 2.0);
    CHECK(c.check.trials == 50);
    CHECK(c.check.seed == 42);
    CHECK(c.solve.strict);
    CHECK(c.solve.k1 == 2.0);
    CHECK(c.solve.b1 == 1.0);
    CHECK_NOTHROW(validate(c));
    CHECK(make_graph(c).edges().size() == 3);
  }

  TEST_CASE("keyed length and weight sections") {
    const auto c = parse(
        "[graph]\ntopology = loop\nalpha = 0.6\n"
        "[lengths]\n1 = 1\n2 = 1.5\n3 = 2\n4 = 1\n"
        "[weights]\n1 = 1\n2 = 1\n3 = 2\n2' = 1\n3' = 0.5\n4 = 1\n");
    CHECK(c.topology == Topology::loop);
    CHECK(c.weights.at("3'") == 0.5);
    CHECK(make_graph(c).edges().size() == 4);
  }

  TEST_CASE("errors carry line and field") {
    CHECK(error_of("[graph]\ntopology = star\ntopology = tree\n") == std::pair<int, std::string>{3, "graph.topology"});
    CHECK(error_of("[graph]\ncolour = red\n").first == 2);
    CHECK(error_of("[graph]\ntopology = star\nalpha = 1.5\nlengths = 1, 1\nweights = 1, 1\n") ==
          std::pair<int, std::string>{3, "graph.alpha"});
    CHECK(error_of("[graph]\ntopology = star\nalpha = 0.5\nlengths = 1, 1\nweights = 1\n").second == "graph.weights");
    CHECK(error_of("[graph]\ntopology = star\nalpha = 0.5\nlengths = 1, x\nweights = 1, 1\n") ==
          std::pair<int, std::string>{4, "graph.lengths"});
    CHECK(error_of("[graph]\ntopology = star\nalpha = 0.5\nlengths = 1, 1\nweights = 1, 0\n") ==
          std::pair<int, std::string>{5, "graph.weights"});
    CHECK(error_of("[graph]\ntopology = ring\n").second == "graph.topology");
    CHECK(error_of("[graph\n").first == 1);
    CHECK(error_of("just text\n").first == 1);
    CHECK(error_of(std::string(kStar) + "[grid]\nn = 3\n").second == "grid.n");
  }

  TEST_CASE("error message format") {
    try {
      parse("[graph]\ntopology = star\nalpha = abc\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).rfind("t.cfg:3: graph.alpha: ", 0) == 0);
    }
  }
}

TEST_SUITE("expression") {
  TEST_CASE("monomial sums") {
    auto e = parse_expression("1");
    REQUIRE(e.size() == 1);
    CHECK(e[0].coefficient == 1.0);
    CHECK(e[0].power == 0.0);
    e = parse_expression("3*t^2 - 0.5 t^0.5 + 2");
    REQUIRE(e.size() == 3);
    CHECK(e[0].coefficient == 3.0);
    CHECK(e[0].power == 2.0);
    CHECK(e[1].coefficient == -0.5);
    CHECK(e[1].power == 0.5);
    CHECK(e[2].power == 0.0);
    e = parse_expression("t^(-0.5)");
    CHECK(e[0].power == -0.5);
    CHECK(parse_expression("-t").at(0).coefficient == -1.0);
  }

  TEST_CASE("malformed or non-integrable input") {
    CHECK_THROWS_AS(parse_expression("t^-1.5"), DomainError);
    CHECK_THROWS_AS(parse_expression("t^-1"), DomainError);
    CHECK_THROWS_AS(parse_expression(""), DomainError);
    CHECK_THROWS_AS(parse_expression("3 * x"), DomainError);
    CHECK_THROWS_AS(parse_expression("t^"), DomainError);
  }

  TEST_CASE("negative powers become endpoint terms") {
    const auto grid = Grid::graded(1.0, 64, 2.0);
    const auto f = to_grid_function(parse_expression("2 t^-0.5 + t"), grid);
    REQUIRE(f.terms(Endpoint::at_zero).size() == 1);
    CHECK(f.terms(Endpoint::at_zero)[0].exponent == -0.5);
    CHECK(std::abs(f.at(10) - (2.0 / std::sqrt((*grid)[10]) + (*grid)[10])) < 1e-13);
  }
}

TEST_SUITE("report") {
  TEST_CASE("scientific notation keeps 12 significant digits") {
    CHECK(sci(1.0) == "1.00000000000e+00");
    CHECK(sci(-0.000123456789012345) == "-1.23456789012e-04");
    CHECK(sci(6.02214076e23) == "6.02214076000e+23");
  }

  TEST_CASE("CSV table layout") {
    CsvTable t("x in length units", {"x", "y"});
    t.add_row({sci(0.5), sci(2.0)});
    CHECK(t.str() == "# x in length units\nx,y\n5.00000000000e-01,2.00000000000e+00\n");
    CHECK_THROWS(t.add_row({"1"}));
  }

  TEST_CASE("atomic write replaces the file and leaves no temporary") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fracgraph_report_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto path = (dir / "out.txt").string();
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), {});
    CHECK(s == "second\n");
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
    CHECK_THROWS(write_atomic((dir / "missing" / "x.txt").string(), "x"));
    fs::remove_all(dir);
  }
}
