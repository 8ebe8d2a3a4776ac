#include "weyl/jet_solver.hpp"

#include <algorithm>

#include "weyl/errors.hpp"
#include "weyl/linear_algebra.hpp"

namespace weyl {

namespace {

void requireDefined(const RiquierBasis& basis, std::span<const Scalar> x0) {
  if (x0.size() != basis.nvars) throw DimensionMismatch("point has the wrong dimension");
  for (std::size_t k = 0; k < basis.elements.size(); ++k) {
    if (!definedAt(basis.elements[k], x0))
      throw EvaluationAtPole("basis element " + std::to_string(k + 1) + " is not defined at the point");
  }
}

}  // namespace

ConstraintSystem constraintMatrix(const RiquierBasis& basis, unsigned s, std::span<const Scalar> x0) {
  if (s < basis.s0) throw SBelowS0("s = " + std::to_string(s) + " is below s0 = " + std::to_string(basis.s0));
  requireDefined(basis, x0);
  ConstraintSystem sys;
  sys.s = s;
  sys.point.assign(x0.begin(), x0.end());
  sys.columns = derivativesUpTo(basis.nvars, basis.ncomponents, s);
  for (std::size_t k = 0; k < basis.elements.size(); ++k) {
    const OperatorVector& p = basis.elements[k];
    unsigned deg = p.highestDerivative().order();
    for (const auto& beta : indicesUpTo(basis.nvars, s - deg)) {
      sys.rowLabels.emplace_back(k, beta);
      sys.rows.push_back(cfSlice(leftMultiplyByD(beta, p), s, x0));
    }
  }
  return sys;
}

bool checkJetConstraints(const Jet& c, const ConstraintSystem& system) {
  if (c.order != system.s) throw DimensionMismatch("jet order differs from the system's s");
  if (c.basePoint != system.point) throw DimensionMismatch("jet base point differs from the system's point");
  std::vector<Scalar> values;
  values.reserve(system.columns.size());
  for (const auto& d : system.columns) values.push_back(c.value(d));
  for (const auto& row : system.rows) {
    Scalar sum(0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].isZero()) sum += row[k] * values[k];
    }
    if (!sum.isZero()) return false;
  }
  return true;
}

Jet formalSolve(const RiquierBasis& basis, std::span<const Scalar> x0, const std::map<Derivative, Scalar, RankingLess>& init,
                unsigned T, const FormalSolveOptions& options) {
  requireDefined(basis, x0);
  for (const auto& [d, v] : init) {
    if (d.component >= basis.ncomponents || d.alpha.size() != basis.nvars)
      throw InvalidInput("initial condition does not fit the system shape");
    if (d.order() > T) throw InvalidInput("initial condition beyond the truncation order");
    if (classifyDerivative(basis, d) == DerivativeClass::Principal)
      throw InvalidInput("initial condition given for a principal derivative");
  }
  Jet u(std::vector<Scalar>(x0.begin(), x0.end()), T, basis.ncomponents);
  for (const auto& delta : derivativesUpTo(basis.nvars, basis.ncomponents, T)) {
    std::optional<std::size_t> rule;
    for (std::size_t k = 0; k < basis.elements.size(); ++k) {
      const Derivative& head = basis.elements[k].highestDerivative();
      if (!head.divides(delta)) continue;
      if (!rule) {
        rule = k;
        continue;
      }
      auto cmp = compareDerivatives(head, basis.elements[*rule].highestDerivative());
      if (options.preferLowestHead ? cmp < 0 : cmp > 0) rule = k;
    }
    if (!rule) {
      auto it = init.find(delta);
      u.set(delta, it == init.end() ? Scalar(0) : it->second);
      continue;
    }
    // D^beta p is monic with head delta; every other derivative ranks lower
    // and already has its value.
    const OperatorVector& p = basis.elements[*rule];
    OperatorVector shifted = leftMultiplyByD(delta.alpha - p.highestDerivative().alpha, p);
    Scalar value(0);
    for (const auto& [d, f] : shifted.terms()) {
      if (d == delta) continue;
      value -= f.evaluate(x0) * u.value(d);
    }
    u.set(delta, std::move(value));
  }
  return u;
}

std::size_t solutionSpaceDim(const RiquierBasis& basis, unsigned s, std::span<const Scalar> x0) {
  ConstraintSystem sys = constraintMatrix(basis, s, x0);
  return sys.columns.size() - linalg::rank(sys.rows, sys.columns.size());
}

std::vector<Jet> constraintNullspace(const ConstraintSystem& system, std::size_t n) {
  auto basis = linalg::nullspace(system.rows, system.columns.size(), Scalar(0), Scalar(1));
  std::vector<Jet> out;
  for (const auto& v : basis) {
    Jet j(system.point, system.s, n);
    for (std::size_t k = 0; k < v.size(); ++k) j.set(system.columns[k], v[k]);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Scalar> chooseRegularPoint(const RiquierBasis& basis, unsigned maxRadius) {
  const std::size_t m = basis.nvars;
  auto candidate = [](unsigned k) {
    // 0, 1, -1, 2, -2, ...
    long v = static_cast<long>((k + 1) / 2);
    return Scalar(k % 2 == 1 ? v : -v);
  };
  auto advance = [m](std::vector<unsigned>& idx, unsigned limit) {
    for (std::size_t pos = m; pos-- > 0;) {
      if (idx[pos] < limit) {
        ++idx[pos];
        return true;
      }
      idx[pos] = 0;
    }
    return false;
  };
  for (unsigned shell = 0; shell <= 2 * maxRadius; ++shell) {
    std::vector<unsigned> idx(m, 0);
    do {
      if (m > 0 && *std::max_element(idx.begin(), idx.end()) != shell) continue;
      std::vector<Scalar> point;
      for (unsigned k : idx) point.push_back(candidate(k));
      bool ok = std::all_of(basis.elements.begin(), basis.elements.end(),
                            [&](const OperatorVector& p) { return definedAt(p, point); });
      if (ok) return point;
    } while (advance(idx, shell));
  }
  throw EvaluationAtPole("no regular point found among small integer points");
}

}  // namespace weyl
