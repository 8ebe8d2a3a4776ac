#include "weyl/operator.hpp"

#include <algorithm>
#include <stdexcept>

#include "weyl/errors.hpp"

namespace weyl {

std::strong_ordering compareDerivatives(const Derivative& a, const Derivative& b) {
  if (auto c = a.alpha.total() <=> b.alpha.total(); c != 0) return c;
  if (auto c = a.component <=> b.component; c != 0) return c;
  std::size_t m = std::min(a.alpha.size(), b.alpha.size());
  // With |alpha| and i fixed, alpha_1..alpha_{m-1} determine alpha_m.
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (auto c = a.alpha[j] <=> b.alpha[j]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<Derivative> derivativesUpTo(std::size_t m, std::size_t n, unsigned s) {
  std::vector<Derivative> out;
  auto indices = indicesUpTo(m, s);
  out.reserve(indices.size() * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : indices) out.push_back({i, a});
  }
  std::sort(out.begin(), out.end(), RankingLess{});
  return out;
}

OperatorVector OperatorVector::term(std::size_t m, std::size_t n, Derivative d, RationalFunction c) {
  OperatorVector p(m, n);
  if (d.component >= n || d.alpha.size() != m) throw DimensionMismatch("derivative does not fit operator shape");
  if (!c.isZero()) p.terms_.emplace(std::move(d), std::move(c));
  return p;
}

OperatorVector OperatorVector::scalarMonomial(const MultiIndex& alpha, RationalFunction c) {
  return term(alpha.size(), 1, Derivative{0, alpha}, std::move(c));
}

OperatorVector OperatorVector::scalar(std::size_t m, RationalFunction c) {
  return term(m, 1, Derivative{0, MultiIndex(m)}, std::move(c));
}

RationalFunction OperatorVector::coefficient(const Derivative& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? RationalFunction(m_) : it->second;
}

void OperatorVector::addTerm(const Derivative& d, const RationalFunction& c) {
  if (c.isZero()) return;
  auto [it, fresh] = terms_.try_emplace(d, c);
  if (!fresh) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

void OperatorVector::checkSameShape(const OperatorVector& o) const {
  if (o.m_ != m_ || o.n_ != n_) throw DimensionMismatch("operators have different shapes");
}

void OperatorVector::addScaled(const RationalFunction& c, const OperatorVector& other) {
  checkSameShape(other);
  if (c.isZero()) return;
  for (const auto& [d, f] : other.terms_) addTerm(d, c * f);
}

OperatorVector OperatorVector::operator-() const {
  OperatorVector r(*this);
  for (auto& [d, f] : r.terms_) f = -f;
  return r;
}

OperatorVector& OperatorVector::operator+=(const OperatorVector& o) {
  checkSameShape(o);
  for (const auto& [d, f] : o.terms_) addTerm(d, f);
  return *this;
}

OperatorVector& OperatorVector::operator-=(const OperatorVector& o) {
  checkSameShape(o);
  for (const auto& [d, f] : o.terms_) addTerm(d, -f);
  return *this;
}

OperatorVector operator*(const RationalFunction& c, const OperatorVector& p) {
  OperatorVector r(p.m_, p.n_);
  if (c.isZero()) return r;
  for (const auto& [d, f] : p.terms_) r.terms_.emplace(d, c * f);
  return r;
}

unsigned OperatorVector::maxOrder() const {
  unsigned d = 0;
  for (const auto& [delta, f] : terms_) d = std::max(d, delta.order());
  return d;
}

OperatorVector OperatorVector::embed(std::size_t n, std::size_t k) const {
  if (n_ != 1) throw DimensionMismatch("embed expects a scalar operator");
  if (k >= n) throw DimensionMismatch("component index out of range");
  OperatorVector r(m_, n);
  for (const auto& [d, f] : terms_) r.terms_.emplace(Derivative{k, d.alpha}, f);
  return r;
}

OperatorVector applyD(std::size_t j, const OperatorVector& p) {
  if (j >= p.nvars()) throw std::out_of_range("applyD: variable index out of range");
  // D_j (f delta) = f (D_j delta) + (d f / d x_j) delta
  OperatorVector r(p.nvars(), p.ncomponents());
  for (const auto& [d, f] : p.terms()) {
    Derivative shifted{d.component, d.alpha + MultiIndex::unit(p.nvars(), j)};
    r.addTerm(shifted, f);
    r.addTerm(d, f.derive(j));
  }
  return r;
}

OperatorVector leftMultiplyByD(const MultiIndex& beta, const OperatorVector& p) {
  if (beta.size() != p.nvars()) throw DimensionMismatch("multi-index does not match operator");
  OperatorVector r = p;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    for (unsigned k = 0; k < beta[j]; ++k) r = applyD(j, r);
  }
  return r;
}

namespace {

// D^alpha p for every alpha in h's support, each built from a cached
// predecessor alpha - e_j when possible.
class DerivedRows {
 public:
  explicit DerivedRows(const OperatorVector& p) { cache_.emplace(MultiIndex(p.nvars()), p); }

  const OperatorVector& get(const MultiIndex& alpha) {
    auto it = cache_.find(alpha);
    if (it != cache_.end()) return it->second;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      MultiIndex prev = alpha;
      prev[j] -= 1;
      auto pit = cache_.find(prev);
      if (pit != cache_.end()) return cache_.emplace(alpha, applyD(j, pit->second)).first->second;
    }
    return cache_.emplace(alpha, leftMultiplyByD(alpha, cache_.begin()->second)).first->second;
  }

 private:
  std::map<MultiIndex, OperatorVector> cache_;
};

void checkScalarProduct(const OperatorVector& h, const OperatorVector& p) {
  if (h.ncomponents() != 1) throw DimensionMismatch("left factor must be a scalar operator");
  if (h.nvars() != p.nvars()) throw DimensionMismatch("operators in different Weyl algebras");
}

}  // namespace

OperatorVector scalarOperatorProduct(const OperatorVector& h, const OperatorVector& p) {
  return sumOfScalarProducts(std::span(&h, 1), std::span(&p, 1));
}

OperatorVector sumOfScalarProducts(std::span<const OperatorVector> hs, std::span<const OperatorVector> ps) {
  if (hs.size() != ps.size()) throw DimensionMismatch("sumOfScalarProducts: lists of different lengths");
  if (ps.empty()) throw InvalidInput("sumOfScalarProducts: empty lists");
  bool polynomial = true;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    checkScalarProduct(hs[j], ps[j]);
    ps[j].checkSameShape(ps[0]);
    polynomial = polynomial && isPolynomialRow(hs[j]) && isPolynomialRow(ps[j]);
  }
  const std::size_t m = ps[0].nvars();
  OperatorVector r(m, ps[0].ncomponents());
  std::vector<DerivedRows> derived;
  derived.reserve(ps.size());
  for (const auto& p : ps) derived.emplace_back(p);
  if (!polynomial) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      for (const auto& [d, f] : hs[j].terms()) r.addScaled(f, derived[j].get(d.alpha));
    }
    return r;
  }
  std::map<Derivative, std::vector<ProductPair>, RankingLess> pairs;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    for (const auto& [d, f] : hs[j].terms()) {
      for (const auto& [e, c] : derived[j].get(d.alpha).terms()) pairs[e].push_back({&f.numerator(), &c.numerator()});
    }
  }
  for (const auto& [e, list] : pairs) {
    Polynomial c = sumOfProducts(m, list);
    if (!c.isZero()) r.addTerm(e, RationalFunction(std::move(c)));
  }
  return r;
}

bool isPolynomialRow(const OperatorVector& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.second.isPolynomial(); });
}

bool definedAt(const OperatorVector& p, std::span<const Scalar> x0) {
  return std::all_of(p.terms().begin(), p.terms().end(), [&](const auto& t) { return t.second.definedAt(x0); });
}

std::vector<Scalar> cfSlice(const OperatorVector& p, unsigned s, std::span<const Scalar> x0) {
  if (p.maxOrder() > s) throw DegreeExceeded("operator has order " + std::to_string(p.maxOrder()) + " > " + std::to_string(s));
  auto columns = derivativesUpTo(p.nvars(), p.ncomponents(), s);
  std::vector<Scalar> out(columns.size(), Scalar(0));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto it = p.terms().find(columns[c]);
    if (it != p.terms().end()) out[c] = it->second.evaluate(x0);
  }
  return out;
}

}  // namespace weyl
