#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "weyl/operator.hpp"

namespace weyl {

/// (1 / denominator) * sum_j numerators[j] * p_j, with polynomial-coefficient
/// scalar operators as numerators. Cofactors are carried in this form so that
/// composing them never needs a gcd per coefficient.
struct GeneratorCombination {
  Polynomial denominator;
  std::vector<OperatorVector> numerators;

  /// The combination equal to p_j.
  static GeneratorCombination unit(std::size_t m, std::size_t count, std::size_t j);
  static GeneratorCombination zero(std::size_t m, std::size_t count);

  /// Left multiplication by a coefficient.
  GeneratorCombination& scale(const RationalFunction& r);
  /// D^beta * (this).
  GeneratorCombination leftMultiplyByD(const MultiIndex& beta) const;
  GeneratorCombination& operator+=(const GeneratorCombination& o);
  GeneratorCombination& operator-=(const GeneratorCombination& o);
  /// h * (this) for a scalar operator h with rational coefficients.
  GeneratorCombination composeLeft(const OperatorVector& h) const;
  /// Cancels common polynomial factors and makes the scaling integer-primitive.
  void normalize();
  /// Divides every numerator coefficient and the denominator by g; false (and
  /// unchanged) when some numerator coefficient is not divisible.
  bool divideBy(const Polynomial& g);
  /// The j-th cofactor as a rational-coefficient operator.
  OperatorVector cofactor(std::size_t j) const;
};

/// Monic, autoreduced, confluent generating set of an F(x)-submodule of
/// B_m(F)^n under the standard ranking.
struct RiquierBasis {
  std::size_t nvars = 0;
  std::size_t ncomponents = 1;
  /// Sorted by increasing head.
  std::vector<OperatorVector> elements;
  /// elements[k] as a combination of the generators. Empty when completion
  /// ran without cofactor tracking.
  std::vector<GeneratorCombination> generatorCofactors;
  std::size_t generatorCount = 0;
  /// Maximum degree over the elements (0 for the empty basis).
  unsigned s0 = 0;

  std::vector<Derivative> heads() const;
  bool hasCofactors() const { return generatorCofactors.size() == elements.size() && !elements.empty(); }
};

struct CompletionOptions {
  bool trackCofactors = true;
};

/// Buchberger-style completion: monic normalisation, full autoreduction, then
/// S-pairs of same-component heads processed by increasing common multiple
/// until every S-pair reduces to zero.
RiquierBasis completeToRiquierBasis(std::size_t m, std::size_t n, std::span<const OperatorVector> generators,
                                    const CompletionOptions& options = {});

/// Shape is taken from the first generator; an empty list is rejected.
RiquierBasis completeToRiquierBasis(std::span<const OperatorVector> generators, const CompletionOptions& options = {});

/// D^(g-a) f - D^(g-b) g for heads delta_a^i, delta_b^i with g = max(a, b);
/// nullopt when the heads sit in different components.
std::optional<OperatorVector> sPair(const OperatorVector& f, const OperatorVector& g);

/// Re-checks that every S-pair of the basis reduces to zero.
bool isConfluent(const RiquierBasis& basis);

/// No derivative of an element is divisible by the head of another element.
bool isAutoreduced(const RiquierBasis& basis);

enum class DerivativeClass { Principal, Parametric };

DerivativeClass classifyDerivative(const RiquierBasis& basis, const Derivative& d);

/// Parametric derivatives of order <= s, increasing in the ranking.
std::vector<Derivative> parametricUpTo(const RiquierBasis& basis, unsigned s);

}  // namespace weyl
