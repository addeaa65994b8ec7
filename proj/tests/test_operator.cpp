#include <cmath>

#include "doctest.h"
#include "fracgraph/errors.hpp"
#include "fracgraph/operator.hpp"
#include "oracles.hpp"

using namespace fracgraph;

namespace {

const GridSpec kSpec{512, 2.0};

GridFunction on(double len, int n, const std::function<cplx(double)>& f, std::vector<PowerTerm> z = {},
                std::vector<PowerTerm> l = {}) {
  const auto grid = Grid::graded(len, n, 2.0);
  auto s = GridFunction::sample(grid, f);
  return GridFunction(grid, std::vector<cplx>(s.values().begin(), s.values().end()), std::move(z), std::move(l));
}

MetricGraph star3() { return build_star(FracOrder(0.5), {1.0, 1.5, 2.0}, {1.0, 0.8, 1.3}); }

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("edge inner product of smooth functions against quadrature") {
    const auto f = on(2.0, 2048, [](double x) { return cplx(std::sin(x), x); });
    const auto g = on(2.0, 2048, [](double x) { return cplx(x * x, -1.0); });
    const double re = oracle::integrate([](double x) { return std::sin(x) * x * x - x; }, 0.0, 2.0);
    const double im = oracle::integrate([](double x) { return std::sin(x) + x * x * x; }, 0.0, 2.0);
    const cplx v = inner_product(f, g);
    CHECK(std::abs(v - cplx(re, im)) < 1e-5);
  }

  TEST_CASE("edge inner product with integrable endpoint terms") {
    // x^{-1/2} against cos x
    const auto f = on(2.0, 2048, [](double) { return cplx(0.0); }, {{1.0, -0.5}});
    const auto g = on(2.0, 2048, [](double x) { return cplx(std::cos(x)); });
    const double ref = oracle::integrate([](double x) { return std::cos(x) / std::sqrt(x); }, 0.0, 2.0);
    CHECK(std::abs(inner_product(f, g) - ref) < 1e-5);

    // x^{-0.3} against (2 - x)^{-0.4}: 2^{0.3} B(0.7, 0.6)
    const auto p = on(2.0, 256, [](double) { return cplx(0.0); }, {{1.0, -0.3}});
    const auto q = on(2.0, 256, [](double) { return cplx(0.0); }, {}, {{1.0, -0.4}});
    const double beta = std::tgamma(0.7) * std::tgamma(0.6) / std::tgamma(1.3);
    CHECK(std::abs(inner_product(p, q) - std::pow(2.0, 0.3) * beta) < 1e-10);
  }

  TEST_CASE("property: inner product is Hermitian and sesquilinear") {
    const auto f = on(1.5, 256, [](double x) { return cplx(std::exp(x), std::sin(3 * x)); }, {{0.5, -0.3}});
    const auto g = on(1.5, 256, [](double x) { return cplx(1.0 - x, x * x); }, {}, {{cplx(0, 2), -0.6}});
    CHECK(std::abs(inner_product(f, g) - std::conj(inner_product(g, f))) < 1e-12);
    const cplx a(0.3, -1.2);
    CHECK(std::abs(inner_product(f * a, g) - a * inner_product(f, g)) < 1e-12);
    CHECK(std::abs(inner_product(f, g * a) - std::conj(a) * inner_product(f, g)) < 1e-12);
  }

  TEST_CASE("operator on x(1 - x) matches the closed form away from the endpoints") {
    const double a = 0.5;
    const auto g = build_star(FracOrder(a), {1.0, 1.0}, {1.0, 1.0});
    const auto phi = GraphFunction::sample(g, GridSpec{1024, 2.0}, [](const Edge&, double x) { return cplx(x - x * x); });
    const auto out = apply_operator(g, phi).at("1");
    // D^a x^p = Gamma(p + 1) / Gamma(p + 1 - a) x^{p - a}, from both ends.
    auto half = [&](double x) {
      return std::pow(x, 1 - a) / std::tgamma(2 - a) - 2.0 * std::pow(x, 2 - a) / std::tgamma(3 - a);
    };
    // The exact result changes sign near x = 0.07, so compare normwise.
    double err = 0.0, size = 0.0;
    const auto& grid = out.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i];
      if (x < 0.05 || x > 0.95) continue;
      const double ref = half(x) + half(1.0 - x);
      err = std::max(err, std::abs(out.at(i) - ref));
      size = std::max(size, std::abs(ref));
    }
    CHECK(err / size < 5e-4);
  }

  TEST_CASE("property: real phi gives zero skew form with itself") {
    const auto g = star3();
    const auto phi =
        GraphFunction::sample(g, kSpec, [](const Edge& e, double x) { return cplx(std::cos(x) * (e.length - x)); });
    CHECK(std::abs(skew_form(g, phi, phi).omega) < 1e-13);
  }

  TEST_CASE("property: skew form is anti-Hermitian and sesquilinear") {
    const auto g = star3();
    GraphCalculus calc(g);
    const auto phi1 = random_vanishing_function(g, kSpec, 11);
    const auto phi2 = random_conforming_function(g, kSpec, 12) * cplx(0.0, 1.0);
    const auto psi = random_conforming_function(g, kSpec, 13) + random_vanishing_function(g, kSpec, 14) * cplx(0, 2);
    const cplx a(0.7, -0.4);
    const cplx o1 = skew_form(calc, g, phi1, psi).omega;
    const cplx o2 = skew_form(calc, g, phi2, psi).omega;
    const cplx o12 = skew_form(calc, g, phi1 * a + phi2, psi).omega;
    CHECK(std::abs(o12 - (a * o1 + o2)) < 1e-10);
    CHECK(std::abs(skew_form(calc, g, psi, phi1).omega + std::conj(o1)) < 1e-12);
  }

  TEST_CASE("random trial functions meet their advertised conditions") {
    const auto g = star3();
    const auto v = random_vanishing_function(g, kSpec, 5);
    for (const auto& [id, f] : v.components()) {
      CHECK(std::abs(f.trace(Endpoint::at_zero)) < 1e-14);
      CHECK(std::abs(f.trace(Endpoint::at_length)) < 1e-14);
    }
    const auto c = random_conforming_function(g, kSpec, 6);
    CHECK(check_conditions(g, c, 1e-6).satisfied);
    CHECK(std::abs(c.at("1").trace(Endpoint::at_zero)) >= 0.25 - 1e-12);
  }

  TEST_CASE("bounded functions break only conditions the skew form cannot see") {
    // phi_1(l_1) = 1 violates Dirichlet at leaf 1, yet both traces vanish for
    // bounded input, so Omega tends to the boundary form, which is zero.
    const auto g = star3();
    GraphCalculus calc(g);
    const auto phi = random_conforming_function(g, kSpec, 21) +
                     GraphFunction::sample(g, kSpec, [](const Edge& e, double x) {
                       return cplx(e.id == "1" ? x * x / (e.length * e.length) : 0.0);
                     });
    const auto psi = random_conforming_function(g, kSpec, 22);
    CHECK_FALSE(check_conditions(g, phi, 1e-6).satisfied);
    const auto s = skew_form(calc, g, phi, psi);
    CHECK(std::abs(s.boundary_form) < 1e-6);
    CHECK(std::abs(s.omega) < 1e-3);
  }

  TEST_CASE("skew form of conforming pairs converges to the boundary form") {
    const auto g = star3();
    double prev = 1e300;
    for (int n : {128, 256, 512}) {
      const GridSpec spec{n, 2.0};
      const auto s = skew_form(g, random_conforming_function(g, spec, 31), random_conforming_function(g, spec, 32));
      CHECK(s.discrepancy() < prev);
      prev = s.discrepancy();
    }
    CHECK(prev < 1e-3);
  }

  TEST_CASE("verification passes on conforming pairs and flags the singular violation") {
    const auto g = star3();
    const auto r = verify_self_adjoint(g, 3, 1e-3, 42, GridSpec{512, 2.0});
    CHECK(r.rows.size() == 6);
    CHECK(r.passed);
    CHECK(r.violation_vertex == "0");
    CHECK(r.violation.omega_abs > 10 * r.tol);
    const auto again = verify_self_adjoint(g, 3, 1e-3, 42, GridSpec{512, 2.0});
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(again.rows[i].omega_abs == r.rows[i].omega_abs);
    CHECK_THROWS_AS(verify_self_adjoint(g, 0, 1e-3, 42), DomainError);
  }
}
