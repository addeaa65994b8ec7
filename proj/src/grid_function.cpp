#include <algorithm>
#include <cmath>
#include <limits>

#include "fracgraph/errors.hpp"
#include "fracgraph/fraccalc.hpp"

namespace fracgraph {

namespace {

constexpr double kExponentTol = 1e-12;
constexpr double kCancelTol = 1e-12;

double node_distance(const Grid& g, Endpoint e, std::size_t i) {
  return e == Endpoint::at_zero ? g[i] : g.length() - g[i];
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid()))
    throw DomainError("grid functions live on different grids");
}

std::vector<PowerTerm> merge(std::vector<PowerTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
  std::vector<PowerTerm> out;
  for (const auto& t : terms) {
    if (!std::isfinite(t.exponent)) throw DomainError("non-finite power-term exponent");
    if (t.coefficient == cplx{}) continue;
    if (!out.empty() && std::abs(out.back().exponent - t.exponent) <= kExponentTol) {
      const double scale = std::max(std::abs(out.back().coefficient), std::abs(t.coefficient));
      out.back().coefficient += t.coefficient;
      if (std::abs(out.back().coefficient) <= kCancelTol * scale) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

GridFunction::GridFunction(std::shared_ptr<const Grid> grid, std::vector<cplx> values,
                           std::vector<PowerTerm> at_zero, std::vector<PowerTerm> at_length)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      at_zero_(std::move(at_zero)),
      at_length_(std::move(at_length)) {
  if (!grid_) throw DomainError("grid function without grid");
  if (values_.size() != grid_->size()) throw DomainError("value count does not match grid size");
  normalize();
}

GridFunction GridFunction::zero(std::shared_ptr<const Grid> grid) {
  const auto n = grid->size();
  return GridFunction(std::move(grid), std::vector<cplx>(n));
}

GridFunction GridFunction::sample(std::shared_ptr<const Grid> grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f((*grid)[i]);
  return GridFunction(std::move(grid), std::move(v));
}

void GridFunction::normalize() {
  for (Endpoint e : {Endpoint::at_zero, Endpoint::at_length}) {
    auto& list = e == Endpoint::at_zero ? at_zero_ : at_length_;
    list = merge(std::move(list));
    std::vector<PowerTerm> kept;
    for (const auto& t : list) {
      if (t.exponent < -kExponentTol) {
        kept.push_back(t);
        continue;
      }
      if (std::abs(t.exponent) <= kExponentTol) {
        for (auto& v : values_) v += t.coefficient;
        continue;
      }
      for (std::size_t i = 0; i < values_.size(); ++i)
        values_[i] += t.coefficient * std::pow(node_distance(*grid_, e, i), t.exponent);
    }
    list = std::move(kept);
  }
}

cplx GridFunction::terms_at(Endpoint e, std::size_t i) const {
  const auto& list = terms(e);
  if (list.empty()) return {};
  const double d = node_distance(*grid_, e, i);
  if (d == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  cplx s{};
  for (const auto& t : list) s += t.coefficient * std::pow(d, t.exponent);
  return s;
}

cplx GridFunction::at(std::size_t i) const {
  return values_[i] + terms_at(Endpoint::at_zero, i) + terms_at(Endpoint::at_length, i);
}

cplx GridFunction::trace(Endpoint e) const {
  const auto& list = terms(e);
  if (!list.empty()) return list.front().coefficient;
  return e == Endpoint::at_zero ? values_.front() : values_.back();
}

GridFunction GridFunction::reflected(std::shared_ptr<const Grid> mirrored_grid) const {
  if (mirrored_grid->size() != grid_->size()) throw DomainError("mirrored grid size mismatch");
  std::vector<cplx> v(values_.rbegin(), values_.rend());
  return GridFunction(std::move(mirrored_grid), std::move(v), at_length_, at_zero_);
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  require_same_grid(*this, other);
  std::vector<cplx> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  auto z = at_zero_;
  z.insert(z.end(), other.at_zero_.begin(), other.at_zero_.end());
  auto l = at_length_;
  l.insert(l.end(), other.at_length_.begin(), other.at_length_.end());
  return GridFunction(grid_, std::move(v), std::move(z), std::move(l));
}

GridFunction GridFunction::operator*(cplx scale) const {
  std::vector<cplx> v(values_);
  for (auto& x : v) x *= scale;
  auto z = at_zero_;
  for (auto& t : z) t.coefficient *= scale;
  auto l = at_length_;
  for (auto& t : l) t.coefficient *= scale;
  return GridFunction(grid_, std::move(v), std::move(z), std::move(l));
}

GridFunction GridFunction::operator-(const GridFunction& other) const { return *this + other * cplx{-1.0}; }

}  // namespace fracgraph
