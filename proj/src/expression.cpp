#include "fracgraph/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "fracgraph/errors.hpp"

namespace fracgraph {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::vector<Monomial> run() {
    std::vector<Monomial> out;
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    bool first = true;
    while (pos_ < s_.size()) {
      double sign = 1.0;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1.0 : 1.0;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out.push_back(term(sign));
      first = false;
      skip();
    }
    return out;
  }

 private:
  Monomial term(double sign) {
    double coef = 1.0;
    bool have_coef = false;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      coef = number();
      have_coef = true;
      skip();
      if (peek('*')) {
        ++pos_;
        skip();
        if (!peek('t')) fail("expected 't' after '*'");
      }
    }
    double power = 0.0;
    if (peek('t')) {
      ++pos_;
      power = 1.0;
      skip();
      if (peek('^')) {
        ++pos_;
        skip();
        bool paren = peek('(');
        if (paren) {
          ++pos_;
          skip();
        }
        double psign = 1.0;
        if (peek('-') || peek('+')) {
          psign = s_[pos_] == '-' ? -1.0 : 1.0;
          ++pos_;
          skip();
        }
        power = psign * number();
        skip();
        if (paren) {
          if (!peek(')')) fail("expected ')'");
          ++pos_;
        }
        if (!(power > -1.0)) fail("exponent must exceed -1");
      }
    } else if (!have_coef) {
      fail("expected a number or 't'");
    }
    return {sign * coef, power};
  }

  double number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(v)) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("expression '" + s_ + "' at position " + std::to_string(pos_ + 1) + ": " + msg);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Monomial> parse_expression(const std::string& text) { return Parser(text).run(); }

GridFunction to_grid_function(const std::vector<Monomial>& expr, std::shared_ptr<const Grid> grid) {
  std::vector<PowerTerm> singular;
  std::vector<cplx> vals(grid->size(), 0.0);
  for (const auto& m : expr) {
    if (m.power < 0.0) {
      singular.push_back({m.coefficient, m.power});
      continue;
    }
    for (std::size_t i = 0; i < grid->size(); ++i) vals[i] += m.coefficient * std::pow((*grid)[i], m.power);
  }
  return GridFunction(std::move(grid), std::move(vals), std::move(singular), {});
}

}  // namespace fracgraph
