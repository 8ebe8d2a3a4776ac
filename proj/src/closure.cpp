#include "weyl/closure.hpp"

#include <algorithm>

#include "weyl/errors.hpp"
#include "weyl/linear_algebra.hpp"
#include "weyl/reduction.hpp"

namespace weyl {

namespace {

void requirePolynomialRows(const OperatorVector& q, std::span<const OperatorVector> generators) {
  if (!isPolynomialRow(q)) throw InvalidInput("candidate row has non-polynomial coefficients");
  for (std::size_t j = 0; j < generators.size(); ++j) {
    generators[j].checkSameShape(q);
    if (!isPolynomialRow(generators[j]))
      throw InvalidInput("generator " + std::to_string(j + 1) + " has non-polynomial coefficients");
  }
}

// cf_s(p) as an F(x)-vector indexed by Delta_s in ranking order.
std::vector<RationalFunction> coefficientVector(const OperatorVector& p, const std::vector<Derivative>& columns) {
  std::vector<RationalFunction> v;
  v.reserve(columns.size());
  for (const auto& d : columns) v.push_back(p.coefficient(d));
  return v;
}

}  // namespace

MembershipResult weylClosureMember(const OperatorVector& q, std::span<const OperatorVector> generators) {
  requirePolynomialRows(q, generators);
  const std::size_t m = q.nvars();
  MembershipResult result;
  result.basis = completeToRiquierBasis(m, q.ncomponents(), generators);
  const RiquierBasis& basis = result.basis;

  ReductionTrace trace = reduceFull(q, basis.elements);
  result.normalForm = trace.normalForm;
  result.member = trace.normalForm.isZero();
  if (!result.member) return result;

  // q = sum_k c_k b_k and b_k = (1/a_k) sum_j H_kj p_j; collecting over a common
  // denominator gives w q = sum_j h_j p_j with polynomial w and h_j.
  GeneratorCombination total = GeneratorCombination::zero(m, generators.size());
  for (const auto& [k, c] : trace.cofactors) total += basis.generatorCofactors[k].composeLeft(c);
  total.normalize();
  Witness witness{total.denominator, total.numerators};

  if (!verifyWitness(witness, q, generators))
    throw std::logic_error("internal error: extracted witness does not verify");
  result.witness = std::move(witness);
  return result;
}

bool verifyWitness(const Witness& witness, const OperatorVector& q, std::span<const OperatorVector> generators) {
  if (witness.w.isZero()) return false;
  if (witness.cofactors.size() != generators.size()) return false;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (witness.cofactors[j].ncomponents() != 1 || witness.cofactors[j].nvars() != q.nvars()) return false;
    if (!isPolynomialRow(witness.cofactors[j])) return false;
  }
  OperatorVector lhs = RationalFunction(witness.w) * q;
  if (generators.empty()) return lhs.isZero();
  return lhs == sumOfScalarProducts(witness.cofactors, generators);
}

std::optional<std::vector<RationalFunction>> lemma1Solve(const std::vector<RationalFunction>& f,
                                                          const std::vector<std::vector<RationalFunction>>& gs) {
  const std::size_t t = f.size();
  const std::size_t k = gs.size();
  std::size_t nvars = f.empty() ? 0 : f[0].nvars();
  for (const auto& g : gs) {
    if (g.size() != t) throw DimensionMismatch("lemma1Solve: vectors of different lengths");
  }
  // Unknowns h_1..h_k; equation per coordinate c: sum_j h_j g_j[c] = f[c].
  linalg::Matrix<RationalFunction> a(t, std::vector<RationalFunction>(k, RationalFunction(nvars)));
  for (std::size_t c = 0; c < t; ++c) {
    for (std::size_t j = 0; j < k; ++j) a[c][j] = gs[j][c];
  }
  return linalg::solve(a, f, k, RationalFunction(nvars));
}

bool membershipViaLemma1(const OperatorVector& q, const RiquierBasis& basis) {
  if (q.isZero()) return true;
  if (basis.elements.empty()) return false;
  unsigned s = q.maxOrder();
  for (const auto& p : basis.elements) s = std::max(s, p.maxOrder());
  auto columns = derivativesUpTo(q.nvars(), q.ncomponents(), s);
  std::vector<std::vector<RationalFunction>> gs;
  for (const auto& p : basis.elements) {
    for (const auto& beta : indicesUpTo(q.nvars(), s - p.maxOrder())) {
      gs.push_back(coefficientVector(leftMultiplyByD(beta, p), columns));
    }
  }
  return lemma1Solve(coefficientVector(q, columns), gs).has_value();
}

bool membershipViaLemma1(const OperatorVector& q, std::span<const OperatorVector> generators) {
  requirePolynomialRows(q, generators);
  RiquierBasis basis =
      completeToRiquierBasis(q.nvars(), q.ncomponents(), generators, CompletionOptions{.trackCofactors = false});
  return membershipViaLemma1(q, basis);
}

bool oracleDivisionMember1D(const OperatorVector& q, const OperatorVector& p) {
  if (q.nvars() != 1 || q.ncomponents() != 1 || p.nvars() != 1 || p.ncomponents() != 1)
    throw InvalidInput("Euclidean division oracle needs m = n = 1");
  if (p.isZero()) throw InvalidInput("division by the zero operator");
  const unsigned orderP = p.highestDerivative().order();
  const RationalFunction leadP = p.terms().rbegin()->second;
  OperatorVector r = q;
  while (!r.isZero()) {
    unsigned orderR = r.highestDerivative().order();
    if (orderR < orderP) return false;
    RationalFunction factor = r.terms().rbegin()->second / leadP;
    // r -= (lc r / lc p) D^(ord r - ord p) p: the head cancels, order drops.
    r.addScaled(-factor, leftMultiplyByD(MultiIndex{orderR - orderP}, p));
  }
  return true;
}

}  // namespace weyl
