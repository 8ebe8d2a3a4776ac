#include "weyl/reduction.hpp"

#include <functional>
#include <map>
#include <optional>

#include "weyl/errors.hpp"

namespace weyl {

HeadData headOf(const OperatorVector& p) {
  if (p.isZero()) throw ZeroOperator("the zero operator has no head");
  const auto& [d, c] = *p.terms().rbegin();
  return {d, c, d.order()};
}

OperatorVector makeMonic(const OperatorVector& p) {
  HeadData h = headOf(p);
  if (h.headCoefficient.isOne()) return p;
  return h.headCoefficient.inverse() * p;
}

namespace {

void checkRules(const OperatorVector& p, std::span<const OperatorVector> rules) {
  for (const auto& r : rules) {
    r.checkSameShape(p);
    if (r.isZero()) throw InvalidInput("reduction rule is zero");
    if (!headOf(r).headCoefficient.isOne()) throw InvalidInput("reduction rule is not monic");
  }
}

// Polynomial-coefficient row (1/den) sum_d coeffs[d] d.
struct FractionFreeRow {
  std::map<Derivative, Polynomial, RankingLess> coeffs;
  Polynomial den;

  explicit FractionFreeRow(const OperatorVector& p) : den(p.nvars(), Scalar(1)) {
    std::vector<RationalFunction> cs;
    for (const auto& [d, c] : p.terms()) cs.push_back(c);
    if (!cs.empty()) den = commonDenominator(cs, p.nvars());
    for (const auto& [d, c] : p.terms()) {
      coeffs.emplace(d, c.denominator() == den ? c.numerator() : c.numerator() * *divideExact(den, c.denominator()));
    }
  }

  OperatorVector toOperator(std::size_t m, std::size_t n) const {
    OperatorVector out(m, n);
    for (const auto& [d, c] : coeffs) out.addTerm(d, RationalFunction(c, den));
    return out;
  }
};

class Reducer {
 public:
  Reducer(const OperatorVector& p, std::span<const OperatorVector> rules)
      : m_(p.nvars()), n_(p.ncomponents()), rules_(rules), row_(p) {}

  const FractionFreeRow& derived(std::size_t rule, const MultiIndex& gamma) {
    auto key = std::make_pair(rule, gamma);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, FractionFreeRow(leftMultiplyByD(gamma, rules_[rule]))).first->second;
  }

  // Rewrites delta using rule: p -= c D^gamma rule, cofactor += c D^gamma.
  // With D^gamma rule = F / f (head coefficient of F equal to f) and
  // p = P / d, the new row is ((f/g) P - (P_delta/g) F) / (d f/g), g = gcd(f, P_delta).
  void rewrite(const Derivative& delta, std::size_t rule) {
    const Derivative& head = rules_[rule].highestDerivative();
    MultiIndex gamma = delta.alpha - head.alpha;
    const FractionFreeRow& f = derived(rule, gamma);
    Polynomial pd = row_.coeffs.at(delta);
    RationalFunction c(pd, row_.den);
    Polynomial g = gcd(f.den, pd);
    Polynomial a = *divideExact(f.den, g);
    Polynomial b = *divideExact(pd, g);
    if (!a.isConstant() || !(a.constantValue() == Scalar(1))) {
      for (auto& [d, coeff] : row_.coeffs) coeff = coeff * a;
      row_.den = row_.den * a;
    }
    for (const auto& [d, coeff] : f.coeffs) {
      Polynomial t = b * coeff;
      auto [slot, fresh] = row_.coeffs.try_emplace(d, -t);
      if (fresh) continue;
      slot->second -= t;
      if (slot->second.isZero()) row_.coeffs.erase(slot);
    }
    row_.coeffs.erase(delta);
    auto [it, unused] = cofactors_.try_emplace(rule, m_, 1);
    it->second.addTerm(Derivative{0, gamma}, c);
    if (it->second.isZero()) cofactors_.erase(it);
  }

  ReductionTrace take() { return {row_.toOperator(m_, n_), std::move(cofactors_)}; }
  const std::map<Derivative, Polynomial, RankingLess>& current() const { return row_.coeffs; }

 private:
  std::size_t m_, n_;
  std::span<const OperatorVector> rules_;
  FractionFreeRow row_;
  std::map<std::size_t, OperatorVector> cofactors_;
  std::map<std::pair<std::size_t, MultiIndex>, FractionFreeRow> cache_;
};

}  // namespace

ReductionTrace reduceFull(const OperatorVector& p, std::span<const OperatorVector> rules) {
  checkRules(p, rules);
  Reducer reducer(p, rules);
  while (true) {
    const auto& terms = reducer.current();
    bool found = false;
    Derivative target;
    std::size_t chosen = 0;
    for (auto it = terms.rbegin(); it != terms.rend() && !found; ++it) {
      for (std::size_t k = 0; k < rules.size(); ++k) {
        const Derivative& head = rules[k].highestDerivative();
        if (!head.divides(it->first)) continue;
        if (!found || compareDerivatives(head, rules[chosen].highestDerivative()) > 0) {
          chosen = k;
          found = true;
        }
      }
      if (found) target = it->first;
    }
    if (!found) break;
    reducer.rewrite(target, chosen);
  }
  return reducer.take();
}

ReductionTrace reduceHead(const OperatorVector& p, std::span<const OperatorVector> rules) {
  checkRules(p, rules);
  Reducer reducer(p, rules);
  while (!reducer.current().empty()) {
    const Derivative& top = reducer.current().rbegin()->first;
    std::optional<std::size_t> chosen;
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const Derivative& head = rules[k].highestDerivative();
      if (!head.divides(top)) continue;
      if (!chosen || compareDerivatives(head, rules[*chosen].highestDerivative()) > 0) chosen = k;
    }
    if (!chosen) break;
    reducer.rewrite(Derivative(top), *chosen);
  }
  return reducer.take();
}

ReductionTrace reduceWithStrategy(const OperatorVector& p, std::span<const OperatorVector> rules,
                                  const std::function<std::size_t(const std::vector<ReductionChoice>&)>& pick) {
  checkRules(p, rules);
  Reducer reducer(p, rules);
  while (true) {
    std::vector<ReductionChoice> candidates;
    for (const auto& [d, c] : reducer.current()) {
      for (std::size_t k = 0; k < rules.size(); ++k) {
        if (rules[k].highestDerivative().divides(d)) candidates.emplace_back(d, k);
      }
    }
    if (candidates.empty()) break;
    std::size_t which = pick(candidates);
    if (which >= candidates.size()) throw std::out_of_range("reduction strategy picked an invalid candidate");
    reducer.rewrite(candidates[which].first, candidates[which].second);
  }
  return reducer.take();
}

OperatorVector reconstruct(const ReductionTrace& trace, std::span<const OperatorVector> rules) {
  OperatorVector sum = trace.normalForm;
  for (const auto& [k, h] : trace.cofactors) sum += scalarOperatorProduct(h, rules[k]);
  return sum;
}

bool isReduced(const OperatorVector& p, std::span<const OperatorVector> rules) {
  for (const auto& [d, c] : p.terms()) {
    for (const auto& r : rules) {
      if (!r.isZero() && r.highestDerivative().divides(d)) return false;
    }
  }
  return true;
}

}  // namespace weyl
