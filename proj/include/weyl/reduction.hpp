#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "weyl/operator.hpp"

namespace weyl {

struct HeadData {
  Derivative head;
  RationalFunction headCoefficient;
  unsigned degree = 0;
};

/// hd p, hc p and deg p under the standard ranking. Throws ZeroOperator.
HeadData headOf(const OperatorVector& p);

/// (hc p)^{-1} p. Throws ZeroOperator.
OperatorVector makeMonic(const OperatorVector& p);

/// Result of rewriting with substitution rules:
/// input = sum_j cofactors[j] * rules[j] + normalForm.
struct ReductionTrace {
  OperatorVector normalForm;
  /// Rule index -> scalar operator over F(x). Unused rules are absent.
  std::map<std::size_t, OperatorVector> cofactors;
};

/// Fully reduces p by monic rules, always rewriting the ranking-highest
/// reducible derivative first. Among rules whose head divides it, the one with
/// the ranking-highest head wins, then the lowest index.
ReductionTrace reduceFull(const OperatorVector& p, std::span<const OperatorVector> rules);

/// Rewrites only while the highest derivative is reducible, with the same rule
/// choice as reduceFull. The result is zero iff the full normal form is zero.
ReductionTrace reduceHead(const OperatorVector& p, std::span<const OperatorVector> rules);

/// Same normal form, but the rewrite target and rule are chosen by `pick`
/// instead of the deterministic strategy. `pick(candidates)` receives the
/// reducible (derivative, rule index) pairs and returns the one to use.
/// Used to check strategy independence.
using ReductionChoice = std::pair<Derivative, std::size_t>;
ReductionTrace reduceWithStrategy(const OperatorVector& p, std::span<const OperatorVector> rules,
                                  const std::function<std::size_t(const std::vector<ReductionChoice>&)>& pick);

/// sum_j cofactors[j] * rules[j] + normalForm.
OperatorVector reconstruct(const ReductionTrace& trace, std::span<const OperatorVector> rules);

/// True when no derivative of p is divisible by a rule head.
bool isReduced(const OperatorVector& p, std::span<const OperatorVector> rules);

}  // namespace weyl
