#pragma once

#include <optional>
#include <span>
#include <vector>

#include "weyl/operator.hpp"
#include "weyl/polynomial.hpp"
#include "weyl/riquier.hpp"

namespace weyl {

/// Certificate w q = sum_j cofactors[j] p_j with w a nonzero polynomial and
/// polynomial-coefficient scalar operators as cofactors.
struct Witness {
  Polynomial w;
  std::vector<OperatorVector> cofactors;
};

struct MembershipResult {
  bool member = false;
  std::optional<Witness> witness;
  OperatorVector normalForm;
  RiquierBasis basis;
};

/// Decides q in F(x)N intersected with A_m(F)^n for N generated by `generators`.
/// Throws InvalidInput when an input row has non-polynomial coefficients.
MembershipResult weylClosureMember(const OperatorVector& q, std::span<const OperatorVector> generators);

/// Checks w q - sum_j h_j p_j = 0 by direct multiplication.
bool verifyWitness(const Witness& witness, const OperatorVector& q, std::span<const OperatorVector> generators);

/// Coefficients h with f = sum_j h_j gs[j] over F(x), if any exist.
std::optional<std::vector<RationalFunction>> lemma1Solve(const std::vector<RationalFunction>& f,
                                                          const std::vector<std::vector<RationalFunction>>& gs);

/// Membership through F(x)-linear solving on coefficient vectors of D^beta p_j
/// truncated at s = max(deg q, deg p_j).
bool membershipViaLemma1(const OperatorVector& q, std::span<const OperatorVector> generators);

/// Same, reusing an already completed basis.
bool membershipViaLemma1(const OperatorVector& q, const RiquierBasis& basis);

/// Left Euclidean division of q by p in B_1(F); m = n = 1 only.
bool oracleDivisionMember1D(const OperatorVector& q, const OperatorVector& p);

}  // namespace weyl
