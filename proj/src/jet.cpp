#include "weyl/jet.hpp"

#include "weyl/errors.hpp"

namespace weyl {

Scalar Jet::value(const Derivative& d) const {
  if (d.component >= components.size()) throw DimensionMismatch("jet component out of range");
  if (d.alpha.total() > order) throw DegreeExceeded("jet is truncated below the requested derivative");
  auto it = components[d.component].find(d.alpha);
  return it == components[d.component].end() ? Scalar(0) : it->second;
}

void Jet::set(const Derivative& d, Scalar v) {
  if (d.component >= components.size()) throw DimensionMismatch("jet component out of range");
  if (d.alpha.size() != basePoint.size()) throw DimensionMismatch("multi-index does not match base point");
  if (d.alpha.total() > order) throw DegreeExceeded("derivative beyond jet truncation order");
  components[d.component][d.alpha] = std::move(v);
}

Jet Jet::truncated(unsigned newOrder) const {
  if (newOrder > order) throw DegreeExceeded("cannot extend a jet by truncation");
  Jet r(basePoint, newOrder, components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (const auto& [a, v] : components[i]) {
      if (a.total() <= newOrder) r.components[i][a] = v;
    }
  }
  return r;
}

bool Jet::isZero() const {
  for (const auto& c : components) {
    for (const auto& [a, v] : c) {
      if (!v.isZero()) return false;
    }
  }
  return true;
}

std::vector<Scalar> Jet::flatten() const {
  std::vector<Scalar> out;
  for (const auto& d : derivativesUpTo(nvars(), ncomponents(), order)) out.push_back(value(d));
  return out;
}

Jet Jet::fromFlat(std::vector<Scalar> x0, unsigned order, std::size_t n, const std::vector<Scalar>& values) {
  std::size_t m = x0.size();
  Jet j(std::move(x0), order, n);
  auto ds = derivativesUpTo(m, n, order);
  if (ds.size() != values.size()) throw DimensionMismatch("flat jet has the wrong length");
  for (std::size_t k = 0; k < ds.size(); ++k) j.set(ds[k], values[k]);
  return j;
}

bool operator==(const Jet& a, const Jet& b) {
  if (a.basePoint != b.basePoint || a.order != b.order || a.components.size() != b.components.size()) return false;
  return a.flatten() == b.flatten();
}

Jet applyToJet(const OperatorVector& p, const Jet& u) {
  if (p.nvars() != u.nvars() || p.ncomponents() != u.ncomponents())
    throw DimensionMismatch("operator and jet shapes differ");
  unsigned deg = p.maxOrder();
  if (u.order < deg) throw DegreeExceeded("jet order is below the operator order");
  unsigned outOrder = u.order - deg;
  Jet out(u.basePoint, outOrder, 1);
  // D^gamma (p[u]) = (D^gamma p)[u]; D^gamma p has order |gamma| + deg p <= u.order.
  for (const auto& gamma : indicesUpTo(p.nvars(), outOrder)) {
    OperatorVector q = leftMultiplyByD(gamma, p);
    Scalar sum(0);
    for (const auto& [d, f] : q.terms()) sum += f.evaluate(u.basePoint) * u.value(d);
    out.components[0][gamma] = sum;
  }
  return out;
}

}  // namespace weyl
