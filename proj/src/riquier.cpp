#include "weyl/riquier.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "weyl/errors.hpp"
#include "weyl/reduction.hpp"

namespace weyl {

std::vector<Derivative> RiquierBasis::heads() const {
  std::vector<Derivative> out;
  out.reserve(elements.size());
  for (const auto& e : elements) out.push_back(e.highestDerivative());
  return out;
}

GeneratorCombination GeneratorCombination::zero(std::size_t m, std::size_t count) {
  return {Polynomial(m, Scalar(1)), std::vector<OperatorVector>(count, OperatorVector(m, 1))};
}

GeneratorCombination GeneratorCombination::unit(std::size_t m, std::size_t count, std::size_t j) {
  GeneratorCombination g = zero(m, count);
  g.numerators.at(j) = OperatorVector::scalar(m, RationalFunction(m, Scalar(1)));
  return g;
}

namespace {

bool allZero(const GeneratorCombination& g) {
  return std::all_of(g.numerators.begin(), g.numerators.end(), [](const OperatorVector& h) { return h.isZero(); });
}

mpz_class binomial(const MultiIndex& n, const MultiIndex& k) {
  mpz_class out = 1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n[i], k[i]);
    out *= b;
  }
  return out;
}

// Rational factor making every coefficient of the given polynomials an integer
// with overall gcd 1, and the leading coefficient of `reference` positive.
mpq_class integerNormalizer(const std::vector<const Polynomial*>& polys, const Polynomial& reference) {
  mpz_class den = 1, num = 0;
  for (const auto* p : polys) {
    for (const auto& t : p->terms()) {
      for (const mpq_class* part : {&t.coefficient.real(), &t.coefficient.imag()}) {
        if (sgn(*part) == 0) continue;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), part->get_den_mpz_t());
      }
    }
  }
  for (const auto* p : polys) {
    for (const auto& t : p->terms()) {
      for (const mpq_class* part : {&t.coefficient.real(), &t.coefficient.imag()}) {
        if (sgn(*part) == 0) continue;
        mpz_class v = den / part->get_den() * part->get_num();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
      }
    }
  }
  if (num == 0) return 1;
  mpq_class f(den, num);
  f.canonicalize();
  const Scalar& lc = reference.leadingCoefficient();
  int sign = sgn(lc.real()) != 0 ? sgn(lc.real()) : sgn(lc.imag());
  if (sign < 0) f = -f;
  return f;
}

}  // namespace

GeneratorCombination& GeneratorCombination::scale(const RationalFunction& r) {
  if (r.isZero()) return *this = zero(denominator.nvars(), numerators.size());
  if (r.isOne()) return *this;
  const Polynomial& u = r.numerator();
  for (auto& h : numerators) {
    OperatorVector scaled(h.nvars(), 1);
    for (const auto& [d, c] : h.terms()) scaled.addTerm(d, RationalFunction(u * c.numerator()));
    h = std::move(scaled);
  }
  denominator = denominator * r.denominator();
  return *this;
}

GeneratorCombination GeneratorCombination::leftMultiplyByD(const MultiIndex& beta) const {
  if (beta.isZero()) return *this;
  if (denominator.isConstant()) {
    GeneratorCombination out = *this;
    for (auto& h : out.numerators) h = weyl::leftMultiplyByD(beta, h);
    return out;
  }
  // D^delta (1/a) = P_delta / a^(|delta|+1) with
  // P_(delta+e_j) = a dP_delta/dx_j - (|delta|+1) P_delta da/dx_j, and
  // D^beta ((1/a) X) = sum_{g <= beta} C(beta, g) D^(beta-g)(1/a) D^g X.
  const Polynomial& a = denominator;
  const std::size_t m = a.nvars();
  const unsigned k = beta.total();
  std::map<MultiIndex, Polynomial> p;
  p.emplace(MultiIndex(m), Polynomial(m, Scalar(1)));
  for (const auto& delta : indicesUpTo(m, k)) {
    if (delta.isZero() || !delta.divides(beta)) continue;
    std::size_t j = 0;
    while (delta[j] == 0) ++j;
    MultiIndex prev = delta - MultiIndex::unit(m, j);
    const Polynomial& pp = p.at(prev);
    p.emplace(delta, a * pp.derive(j) - Scalar(static_cast<long>(prev.total() + 1)) * pp * a.derive(j));
  }
  std::vector<Polynomial> powers{Polynomial(m, Scalar(1))};
  for (unsigned e = 1; e <= k + 1; ++e) powers.push_back(powers.back() * a);

  GeneratorCombination out{powers[k + 1], std::vector<OperatorVector>(numerators.size(), OperatorVector(m, 1))};
  for (const auto& [g, unused] : p) {
    if (!g.divides(beta)) continue;
    MultiIndex rest = beta - g;
    Polynomial factor = Scalar(mpq_class(binomial(beta, g))) * p.at(rest) * powers[g.total()];
    RationalFunction f(factor);
    for (std::size_t j = 0; j < numerators.size(); ++j) {
      if (numerators[j].isZero()) continue;
      out.numerators[j] += f * weyl::leftMultiplyByD(g, numerators[j]);
    }
  }
  return out;
}

namespace {

// x * f + y * g coefficientwise, for polynomial-coefficient scalar operators.
OperatorVector linearCombination(const Polynomial& x, const OperatorVector& f, const Polynomial& y,
                                 const OperatorVector& g) {
  const std::size_t m = x.nvars();
  std::map<Derivative, std::vector<ProductPair>, RankingLess> pairs;
  for (const auto& [d, c] : f.terms()) pairs[d].push_back({&x, &c.numerator()});
  for (const auto& [d, c] : g.terms()) pairs[d].push_back({&y, &c.numerator()});
  OperatorVector out(m, 1);
  for (const auto& [d, list] : pairs) {
    Polynomial c = sumOfProducts(m, list);
    if (!c.isZero()) out.addTerm(d, RationalFunction(std::move(c)));
  }
  return out;
}

void accumulate(GeneratorCombination& self, const GeneratorCombination& o, const Scalar& sign) {
  if (self.denominator == o.denominator) {
    for (std::size_t j = 0; j < self.numerators.size(); ++j) {
      if (sign.isOne()) {
        self.numerators[j] += o.numerators[j];
      } else {
        self.numerators[j] -= o.numerators[j];
      }
    }
    return;
  }
  Polynomial g = gcd(self.denominator, o.denominator);
  Polynomial mine = *divideExact(o.denominator, g);
  Polynomial theirs = *divideExact(self.denominator, g) * sign;
  for (std::size_t j = 0; j < self.numerators.size(); ++j) {
    if (self.numerators[j].isZero() && o.numerators[j].isZero()) continue;
    self.numerators[j] = linearCombination(mine, self.numerators[j], theirs, o.numerators[j]);
  }
  self.denominator = self.denominator * mine;
}

}  // namespace

GeneratorCombination& GeneratorCombination::operator+=(const GeneratorCombination& o) {
  if (allZero(o)) return *this;
  if (allZero(*this)) return *this = o;
  accumulate(*this, o, Scalar(1));
  return *this;
}

GeneratorCombination& GeneratorCombination::operator-=(const GeneratorCombination& o) {
  if (allZero(o)) return *this;
  if (allZero(*this)) {
    *this = o;
    for (auto& h : numerators) h = -h;
    return *this;
  }
  accumulate(*this, o, Scalar(-1));
  return *this;
}

GeneratorCombination GeneratorCombination::composeLeft(const OperatorVector& h) const {
  const std::size_t m = denominator.nvars();
  if (h.isZero() || allZero(*this)) return zero(m, numerators.size());
  // h (1/a) = (1/den) sum_g E_g D^g with polynomial E_g, using
  // D^alpha (1/a) = sum_{g <= alpha} C(alpha, g) P_(alpha-g) / a^(|alpha-g|+1) D^g.
  // The large numerators then meet only one product per shift g.
  const Polynomial& a = denominator;
  MultiIndex top(m);
  unsigned k = 0;
  std::vector<Polynomial> dens;
  for (const auto& [d, r] : h.terms()) {
    top = componentwiseMax(top, d.alpha);
    k = std::max(k, d.alpha.total());
    dens.push_back(r.denominator());
  }
  Polynomial lr = dens.front();
  for (std::size_t i = 1; i < dens.size(); ++i) lr = lcm(lr, dens[i]);

  std::map<MultiIndex, Polynomial> p;
  p.emplace(MultiIndex(m), Polynomial(m, Scalar(1)));
  for (const auto& delta : indicesUpTo(m, k)) {
    if (delta.isZero() || !delta.divides(top)) continue;
    std::size_t j = 0;
    while (delta[j] == 0) ++j;
    MultiIndex prev = delta - MultiIndex::unit(m, j);
    const Polynomial& pp = p.at(prev);
    p.emplace(delta, a * pp.derive(j) - Scalar(static_cast<long>(prev.total() + 1)) * pp * a.derive(j));
  }
  std::vector<Polynomial> powers{Polynomial(m, Scalar(1))};
  for (unsigned e = 1; e <= k + 1; ++e) powers.push_back(powers.back() * a);

  std::map<MultiIndex, Polynomial> e;
  for (const auto& [d, r] : h.terms()) {
    Polynomial scaled = r.numerator() * *divideExact(lr, r.denominator());
    for (const auto& [g, unused] : p) {
      if (!g.divides(d.alpha)) continue;
      MultiIndex rest = d.alpha - g;
      Polynomial term = Scalar(mpq_class(binomial(d.alpha, g))) * scaled * p.at(rest) * powers[k - rest.total()];
      auto [it, fresh] = e.try_emplace(g, term);
      if (!fresh) it->second += term;
    }
  }
  Polynomial den = lr * powers[k + 1];
  Polynomial common = den;
  for (const auto& [g, poly] : e) {
    if (poly.isZero()) continue;
    common = gcd(common, poly);
    if (common.isConstant()) break;
  }
  if (!common.isConstant()) {
    den = *divideExact(den, common);
    for (auto& [g, poly] : e) poly = *divideExact(poly, common);
  }

  GeneratorCombination out{den, std::vector<OperatorVector>(numerators.size(), OperatorVector(m, 1))};
  for (std::size_t j = 0; j < numerators.size(); ++j) {
    if (numerators[j].isZero()) continue;
    std::vector<OperatorVector> shifted;
    shifted.reserve(e.size());
    std::map<Derivative, std::vector<ProductPair>, RankingLess> pairs;
    for (const auto& [g, poly] : e) {
      if (poly.isZero()) continue;
      shifted.push_back(weyl::leftMultiplyByD(g, numerators[j]));
      for (const auto& [d, c] : shifted.back().terms()) pairs[d].push_back({&poly, &c.numerator()});
    }
    for (const auto& [d, list] : pairs) {
      Polynomial c = sumOfProducts(m, list);
      if (!c.isZero()) out.numerators[j].addTerm(d, RationalFunction(std::move(c)));
    }
  }
  return out;
}

bool GeneratorCombination::divideBy(const Polynomial& g) {
  const std::size_t m = denominator.nvars();
  std::vector<OperatorVector> divided(numerators.size(), OperatorVector(m, 1));
  for (std::size_t j = 0; j < numerators.size(); ++j) {
    for (const auto& [d, c] : numerators[j].terms()) {
      auto q = divideExact(c.numerator(), g);
      if (!q) return false;
      divided[j].addTerm(d, RationalFunction(*std::move(q)));
    }
  }
  numerators = std::move(divided);
  denominator = *divideExact(denominator, g);
  return true;
}

void GeneratorCombination::normalize() {
  const std::size_t m = denominator.nvars();
  if (allZero(*this)) {
    denominator = Polynomial(m, Scalar(1));
    return;
  }
  if (!denominator.isConstant()) {
    // One gcd against a pseudo-random integer combination of the coefficients
    // usually finds the common factor; exact division confirms it.
    Polynomial mix(m);
    long weight = 1;
    for (const auto& h : numerators) {
      for (const auto& [d, c] : h.terms()) {
        mix += c.numerator() * Scalar(weight);
        weight = weight * 7 % 1009 + 1;
      }
    }
    Polynomial g = gcd(denominator, mix);
    if (!g.isConstant() && !divideBy(g)) {
      g = denominator;
      for (const auto& h : numerators) {
        for (const auto& [d, c] : h.terms()) {
          g = gcd(g, c.numerator());
          if (g.isConstant()) break;
        }
        if (g.isConstant()) break;
      }
      if (!g.isConstant()) divideBy(g);
    }
  }
  std::vector<const Polynomial*> polys{&denominator};
  for (const auto& h : numerators) {
    for (const auto& [d, c] : h.terms()) polys.push_back(&c.numerator());
  }
  mpq_class f = integerNormalizer(polys, denominator);
  if (f != 1) {
    Scalar factor(f);
    denominator = denominator * factor;
    RationalFunction r(m, factor);
    for (auto& h : numerators) h = r * h;
  }
}

OperatorVector GeneratorCombination::cofactor(std::size_t j) const {
  return RationalFunction(Polynomial(denominator.nvars(), Scalar(1)), denominator) * numerators.at(j);
}

namespace {

// How a module element arose from the generators. Cofactors are expanded only
// for the elements that survive into the final basis.
//   Generator: p_j.
//   Scaled:    factor * first.
//   Reduced:   factor * first - sum (c, rule) c * rule.
//   SPair:     u D^firstShift first - v D^secondShift second.
struct Origin {
  enum class Kind { Generator, Scaled, Reduced, SPair } kind;
  std::size_t generator = 0;
  std::shared_ptr<const Origin> first, second;
  MultiIndex firstShift, secondShift;
  std::optional<RationalFunction> factor, u, v;
  std::vector<std::pair<std::shared_ptr<const Origin>, OperatorVector>> subtracted;
};

using OriginPtr = std::shared_ptr<const Origin>;

// Elements are kept with polynomial coefficients; the module is an F(x)-space,
// so rescaling by a nonzero polynomial never leaves it.
struct Tracked {
  OperatorVector op;
  OriginPtr origin;
};

class Expander {
 public:
  Expander(std::size_t m, std::size_t count) : m_(m), count_(count) {}

  const GeneratorCombination& expand(const OriginPtr& node) {
    auto it = memo_.find(node.get());
    if (it != memo_.end()) return it->second;
    GeneratorCombination out = GeneratorCombination::zero(m_, count_);
    switch (node->kind) {
      case Origin::Kind::Generator:
        out = GeneratorCombination::unit(m_, count_, node->generator);
        break;
      case Origin::Kind::Scaled:
        out = expand(node->first);
        out.scale(*node->factor);
        out.normalize();
        break;
      case Origin::Kind::Reduced:
        out = expand(node->first);
        if (node->factor) out.scale(*node->factor);
        for (const auto& [rule, c] : node->subtracted) out -= expand(rule).composeLeft(c);
        out.normalize();
        break;
      case Origin::Kind::SPair: {
        out = expand(node->first).leftMultiplyByD(node->firstShift);
        out.scale(*node->u);
        GeneratorCombination other = expand(node->second).leftMultiplyByD(node->secondShift);
        other.scale(*node->v);
        out -= other;
        out.normalize();
        break;
      }
    }
    return memo_.emplace(node.get(), std::move(out)).first->second;
  }

 private:
  std::size_t m_, count_;
  std::map<const Origin*, GeneratorCombination> memo_;
};

const Polynomial& headPolynomial(const OperatorVector& p) { return p.terms().rbegin()->second.numerator(); }

class Completion {
 public:
  Completion(std::size_t m, std::size_t n, std::size_t generatorCount, bool track)
      : m_(m), n_(n), count_(generatorCount), track_(track) {}

  void addGenerator(std::size_t j, const OperatorVector& g) {
    if (g.isZero()) return;
    auto origin = std::make_shared<Origin>();
    origin->kind = Origin::Kind::Generator;
    origin->generator = j;
    Tracked t{g, std::move(origin)};
    if (!isPolynomialRow(g)) {
      std::vector<RationalFunction> cs;
      for (const auto& [d, c] : g.terms()) cs.push_back(c);
      t = scaled(std::move(t), RationalFunction(commonDenominator(cs, m_)));
    }
    basis_.push_back(primitive(std::move(t)));
  }

  void run() {
    interreduce();
    while (true) {
      auto added = firstNonzeroSPair();
      if (!added) break;
      basis_.push_back(std::move(*added));
      interreduce();
    }
  }

  RiquierBasis result() {
    RiquierBasis out;
    out.nvars = m_;
    out.ncomponents = n_;
    out.generatorCount = count_;
    std::sort(basis_.begin(), basis_.end(), [](const Tracked& a, const Tracked& b) {
      return compareDerivatives(a.op.highestDerivative(), b.op.highestDerivative()) < 0;
    });
    Expander expander(m_, count_);
    for (auto& t : basis_) {
      t = scaled(std::move(t), RationalFunction(Polynomial(m_, Scalar(1)), headPolynomial(t.op)));
      out.s0 = std::max(out.s0, t.op.highestDerivative().order());
      if (track_) out.generatorCofactors.push_back(expander.expand(t.origin));
      out.elements.push_back(std::move(t.op));
    }
    return out;
  }

 private:
  Tracked scaled(Tracked t, const RationalFunction& factor) const {
    if (factor.isOne()) return t;
    OriginPtr origin;
    if (track_) {
      auto node = std::make_shared<Origin>();
      node->kind = Origin::Kind::Scaled;
      node->first = std::move(t.origin);
      node->factor = factor;
      origin = std::move(node);
    }
    return {factor * t.op, std::move(origin)};
  }

  // Divides out the polynomial content and the leading rational constant.
  Tracked primitive(Tracked t) const {
    Polynomial mix(m_);
    long weight = 1;
    for (const auto& [d, c] : t.op.terms()) {
      mix += c.numerator() * Scalar(weight);
      weight = weight * 7 % 1009 + 1;
    }
    Polynomial g = headPolynomial(t.op);
    g = gcd(g, mix);
    for (const auto& [d, c] : t.op.terms()) {
      if (g.isConstant()) break;
      if (!divideExact(c.numerator(), g)) g = gcd(g, c.numerator());
    }
    if (g.isConstant()) g = Polynomial(m_, Scalar(1));
    std::vector<Polynomial> quotients;
    std::vector<const Polynomial*> polys;
    for (const auto& [d, c] : t.op.terms()) quotients.push_back(g.isOne() ? c.numerator() : *divideExact(c.numerator(), g));
    for (const auto& q : quotients) polys.push_back(&q);
    mpq_class f = integerNormalizer(polys, quotients.back());
    Polynomial content = g * Scalar(mpq_class(1 / f));
    if (content.isOne()) return t;
    OperatorVector divided(m_, n_);
    std::size_t i = 0;
    for (const auto& [d, c] : t.op.terms()) divided.addTerm(d, RationalFunction(quotients[i++] * Scalar(f)));
    OriginPtr origin;
    if (track_) {
      auto node = std::make_shared<Origin>();
      node->kind = Origin::Kind::Scaled;
      node->first = std::move(t.origin);
      node->factor = RationalFunction(Polynomial(m_, Scalar(1)), content);
      origin = std::move(node);
    }
    return {std::move(divided), std::move(origin)};
  }

  // Pseudo-reduction: a * t - sum_k c_k rules_k with polynomial a and c_k, the
  // ranking-highest reducible derivative rewritten first. nullopt when nothing
  // is reducible.
  std::optional<Tracked> reduceAgainst(const Tracked& t, const std::vector<const Tracked*>& rules) const {
    OperatorVector p = t.op;
    Polynomial factor(m_, Scalar(1));
    std::map<std::size_t, OperatorVector> cofactors;
    std::map<std::pair<std::size_t, MultiIndex>, OperatorVector> derived;
    bool reduced = false;
    while (!p.isZero()) {
      std::optional<std::size_t> chosen;
      Derivative target;
      for (auto it = p.terms().rbegin(); it != p.terms().rend() && !chosen; ++it) {
        for (std::size_t k = 0; k < rules.size(); ++k) {
          const Derivative& head = rules[k]->op.highestDerivative();
          if (!head.divides(it->first)) continue;
          if (!chosen || compareDerivatives(head, rules[*chosen]->op.highestDerivative()) > 0) chosen = k;
        }
        if (chosen) target = it->first;
      }
      if (!chosen) break;
      reduced = true;
      const OperatorVector& rule = rules[*chosen]->op;
      MultiIndex gamma = target.alpha - rule.highestDerivative().alpha;
      auto key = std::make_pair(*chosen, gamma);
      auto cached = derived.find(key);
      if (cached == derived.end()) cached = derived.emplace(key, leftMultiplyByD(gamma, rule)).first;
      // p <- (r/g) p - (p_delta/g) D^gamma rule with r the rule's head coefficient.
      const Polynomial& r = headPolynomial(rule);
      Polynomial pd = p.coefficient(target).numerator();
      Polynomial g = gcd(r, pd);
      RationalFunction a(*divideExact(r, g));
      RationalFunction b(*divideExact(pd, g));
      if (!a.isOne()) {
        p = a * p;
        factor = factor * a.numerator();
        if (track_) {
          for (auto& [k, c] : cofactors) c = a * c;
        }
      }
      p.addScaled(-b, cached->second);
      if (track_) {
        auto [slot, fresh] = cofactors.try_emplace(*chosen, m_, 1);
        slot->second.addTerm(Derivative{0, gamma}, b);
      }
    }
    if (!reduced) return std::nullopt;
    OriginPtr origin;
    if (track_) {
      auto node = std::make_shared<Origin>();
      node->kind = Origin::Kind::Reduced;
      node->first = t.origin;
      if (!(factor.isConstant() && factor.constantValue() == Scalar(1))) node->factor = RationalFunction(factor);
      for (auto& [k, c] : cofactors) {
        if (!c.isZero()) node->subtracted.emplace_back(rules[k]->origin, std::move(c));
      }
      origin = std::move(node);
    }
    Tracked out{std::move(p), std::move(origin)};
    if (out.op.isZero()) return out;
    return primitive(std::move(out));
  }

  void interreduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::sort(basis_.begin(), basis_.end(), [](const Tracked& a, const Tracked& b) {
        return compareDerivatives(a.op.highestDerivative(), b.op.highestDerivative()) < 0;
      });
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::vector<const Tracked*> others;
        for (std::size_t k = 0; k < basis_.size(); ++k) {
          if (k != i) others.push_back(&basis_[k]);
        }
        auto reduced = reduceAgainst(basis_[i], others);
        if (!reduced) continue;
        changed = true;
        if (reduced->op.isZero()) {
          basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
          break;
        }
        basis_[i] = std::move(*reduced);
        break;
      }
    }
  }

  std::optional<Tracked> firstNonzeroSPair() const {
    struct Pair {
      std::size_t a, b;
      Derivative lcm;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      for (std::size_t b = a + 1; b < basis_.size(); ++b) {
        const Derivative& ha = basis_[a].op.highestDerivative();
        const Derivative& hb = basis_[b].op.highestDerivative();
        if (ha.component != hb.component) continue;
        pairs.push_back({a, b, Derivative{ha.component, componentwiseMax(ha.alpha, hb.alpha)}});
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& x, const Pair& y) { return compareDerivatives(x.lcm, y.lcm) < 0; });
    std::vector<const Tracked*> rules;
    for (const auto& t : basis_) rules.push_back(&t);
    for (const auto& p : pairs) {
      Tracked s = sPairTracked(basis_[p.a], basis_[p.b], p.lcm.alpha);
      if (s.op.isZero()) continue;
      auto reduced = reduceAgainst(s, rules);
      if (!reduced) return primitive(std::move(s));
      if (!reduced->op.isZero()) return reduced;
    }
    return std::nullopt;
  }

  // (lc g / h) D^sf f - (lc f / h) D^sg g with h = gcd(lc f, lc g).
  Tracked sPairTracked(const Tracked& f, const Tracked& g, const MultiIndex& gamma) const {
    MultiIndex sf = gamma - f.op.highestDerivative().alpha;
    MultiIndex sg = gamma - g.op.highestDerivative().alpha;
    const Polynomial& lf = headPolynomial(f.op);
    const Polynomial& lg = headPolynomial(g.op);
    Polynomial h = gcd(lf, lg);
    RationalFunction u(*divideExact(lg, h)), v(*divideExact(lf, h));
    OriginPtr origin;
    if (track_) {
      auto node = std::make_shared<Origin>();
      node->kind = Origin::Kind::SPair;
      node->first = f.origin;
      node->second = g.origin;
      node->firstShift = sf;
      node->secondShift = sg;
      node->u = u;
      node->v = v;
      origin = std::move(node);
    }
    return {u * leftMultiplyByD(sf, f.op) - v * leftMultiplyByD(sg, g.op), std::move(origin)};
  }

  std::size_t m_, n_, count_;
  bool track_;
  std::vector<Tracked> basis_;
};

}  // namespace

RiquierBasis completeToRiquierBasis(std::size_t m, std::size_t n, std::span<const OperatorVector> generators,
                                    const CompletionOptions& options) {
  Completion completion(m, n, generators.size(), options.trackCofactors);
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (generators[j].nvars() != m || generators[j].ncomponents() != n)
      throw DimensionMismatch("generator " + std::to_string(j + 1) + " has the wrong shape");
    completion.addGenerator(j, generators[j]);
  }
  completion.run();
  return completion.result();
}

RiquierBasis completeToRiquierBasis(std::span<const OperatorVector> generators, const CompletionOptions& options) {
  if (generators.empty()) throw InvalidInput("cannot infer the module shape from an empty generator list");
  return completeToRiquierBasis(generators[0].nvars(), generators[0].ncomponents(), generators, options);
}

std::optional<OperatorVector> sPair(const OperatorVector& f, const OperatorVector& g) {
  const Derivative& hf = headOf(f).head;
  const Derivative& hg = headOf(g).head;
  if (hf.component != hg.component) return std::nullopt;
  MultiIndex gamma = componentwiseMax(hf.alpha, hg.alpha);
  return leftMultiplyByD(gamma - hf.alpha, makeMonic(f)) - leftMultiplyByD(gamma - hg.alpha, makeMonic(g));
}

bool isConfluent(const RiquierBasis& basis) {
  for (std::size_t a = 0; a < basis.elements.size(); ++a) {
    for (std::size_t b = a + 1; b < basis.elements.size(); ++b) {
      auto s = sPair(basis.elements[a], basis.elements[b]);
      if (!s) continue;
      if (!reduceFull(*s, basis.elements).normalForm.isZero()) return false;
    }
  }
  return true;
}

bool isAutoreduced(const RiquierBasis& basis) {
  for (std::size_t a = 0; a < basis.elements.size(); ++a) {
    for (std::size_t b = 0; b < basis.elements.size(); ++b) {
      if (a == b) continue;
      const Derivative& head = basis.elements[b].highestDerivative();
      for (const auto& [d, c] : basis.elements[a].terms()) {
        if (head.divides(d)) return false;
      }
    }
  }
  return true;
}

DerivativeClass classifyDerivative(const RiquierBasis& basis, const Derivative& d) {
  for (const auto& e : basis.elements) {
    if (e.highestDerivative().divides(d)) return DerivativeClass::Principal;
  }
  return DerivativeClass::Parametric;
}

std::vector<Derivative> parametricUpTo(const RiquierBasis& basis, unsigned s) {
  std::vector<Derivative> out;
  for (const auto& d : derivativesUpTo(basis.nvars, basis.ncomponents, s)) {
    if (classifyDerivative(basis, d) == DerivativeClass::Parametric) out.push_back(d);
  }
  return out;
}

}  // namespace weyl
