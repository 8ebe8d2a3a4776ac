#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "weyl/jet.hpp"
#include "weyl/riquier.hpp"

namespace weyl {

/// The homogeneous linear conditions on c in F^{Delta_s} that a jet of order s
/// must satisfy to extend to a solution of the basis at x0: one row per basis
/// element p and beta with |beta| <= s - deg p, entry cf(D^beta p)(delta)(x0).
struct ConstraintSystem {
  unsigned s = 0;
  std::vector<Scalar> point;
  std::vector<Derivative> columns;
  /// (basis element index, beta) for each row.
  std::vector<std::pair<std::size_t, MultiIndex>> rowLabels;
  std::vector<std::vector<Scalar>> rows;
};

/// Throws SBelowS0 when s < basis.s0 and EvaluationAtPole when a basis
/// coefficient is undefined at x0.
ConstraintSystem constraintMatrix(const RiquierBasis& basis, unsigned s, std::span<const Scalar> x0);

/// Every row annihilates the jet. Throws DimensionMismatch when the jet's
/// point, order or shape differ from the system's.
bool checkJetConstraints(const Jet& c, const ConstraintSystem& system);

struct FormalSolveOptions {
  /// Among rules whose head divides a principal derivative, use the
  /// lowest-ranked head instead of the highest. The result must not change.
  bool preferLowestHead = false;
};

/// Formal solution through order T: parametric derivatives take the given
/// values (missing ones are 0), principal ones are computed in increasing
/// ranking order from the substitution rules. Throws InvalidInput when `init`
/// names a principal derivative or one past order T.
Jet formalSolve(const RiquierBasis& basis, std::span<const Scalar> x0, const std::map<Derivative, Scalar, RankingLess>& init,
                unsigned T, const FormalSolveOptions& options = {});

/// Nullity of the constraint matrix.
std::size_t solutionSpaceDim(const RiquierBasis& basis, unsigned s, std::span<const Scalar> x0);

/// Nullspace of the constraint matrix, each vector as a jet of order s.
std::vector<Jet> constraintNullspace(const ConstraintSystem& system, std::size_t n);

/// First point in the scan 0, 1, -1, 2, -2, ... (componentwise, by shells)
/// where every basis coefficient is defined.
std::vector<Scalar> chooseRegularPoint(const RiquierBasis& basis, unsigned maxRadius = 16);

/// Default truncation order s0 + 4.
inline unsigned defaultTruncation(const RiquierBasis& basis) { return basis.s0 + 4; }

}  // namespace weyl
