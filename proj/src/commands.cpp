#include "weyl/commands.hpp"

#include "weyl/errors.hpp"
#include "weyl/jet_solver.hpp"
#include "weyl/linear_algebra.hpp"

namespace weyl::commands {

using nlohmann::json;

namespace {

json scalarList(const std::vector<Scalar>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

json derivativeList(const std::vector<Derivative>& ds, std::size_t n) {
  json out = json::array();
  for (const auto& d : ds) out.push_back(formatDerivative(d, n));
  return out;
}

std::vector<Scalar> resolvePoint(const SystemFile& sys, const RiquierBasis& basis,
                                 std::optional<std::vector<Scalar>> point) {
  if (point) return *point;
  if (sys.point) return *sys.point;
  return chooseRegularPoint(basis);
}

}  // namespace

json basisToJson(const RiquierBasis& basis) {
  json elements = json::array();
  for (const auto& e : basis.elements) {
    elements.push_back({{"operator", formatOperator(e)},
                        {"head", formatDerivative(e.highestDerivative(), basis.ncomponents)},
                        {"degree", e.highestDerivative().order()}});
  }
  return elements;
}

json jetToJson(const Jet& jet) {
  json values = json::array();
  json taylor = json::array();
  for (const auto& component : jet.components) {
    json v = json::object();
    json t = json::object();
    for (const auto& [alpha, value] : component) {
      v[alpha.str()] = value.str();
      t[alpha.str()] = (value / Scalar(mpq_class(factorial(alpha)))).str();
    }
    values.push_back(std::move(v));
    taylor.push_back(std::move(t));
  }
  return {{"point", scalarList(jet.basePoint)}, {"order", jet.order}, {"derivatives", values}, {"taylor", taylor}};
}

json riquier(const SystemFile& sys, std::optional<unsigned> s) {
  RiquierBasis basis = completeToRiquierBasis(sys.context.nvars, sys.context.ncomponents, sys.generators,
                                              CompletionOptions{.trackCofactors = false});
  unsigned upTo = s.value_or(sys.s.value_or(basis.s0));
  return {{"basis", basisToJson(basis)},
          {"s0", basis.s0},
          {"s", upTo},
          {"parametric", derivativeList(parametricUpTo(basis, upTo), basis.ncomponents)}};
}

MemberOutcome member(const SystemFile& sys, const OperatorVector& q, bool crossCheck) {
  MembershipResult r = weylClosureMember(q, sys.generators);
  MemberOutcome out;
  out.member = r.member;
  json doc = {{"member", r.member}, {"normal_form", formatOperator(r.normalForm)}, {"basis", basisToJson(r.basis)}};
  if (r.witness) {
    json cofactors = json::array();
    for (const auto& h : r.witness->cofactors) cofactors.push_back(formatOperator(h));
    doc["witness"] = {{"w", r.witness->w.str()}, {"cofactors", cofactors}, {"verified", true}};
  } else {
    doc["witness"] = nullptr;
  }
  if (crossCheck) {
    bool viaLinear = membershipViaLemma1(q, r.basis);
    json check = {{"reduction", r.member}, {"linear_solve", viaLinear}};
    bool agree = viaLinear == r.member;
    if (sys.context.nvars == 1 && sys.context.ncomponents == 1 && r.basis.elements.size() == 1) {
      // A single nonzero generator is divided by directly; otherwise the basis
      // element (their left gcd) stands in for it.
      const OperatorVector& divisor =
          sys.generators.size() == 1 ? sys.generators.front() : r.basis.elements.front();
      bool viaDivision = oracleDivisionMember1D(q, divisor);
      check["division"] = viaDivision;
      agree = agree && viaDivision == r.member;
    } else {
      check["division"] = nullptr;
    }
    check["agree"] = agree;
    doc["cross_check"] = check;
    out.consistent = agree;
  }
  out.document = std::move(doc);
  return out;
}

json solve(const SystemFile& sys, std::optional<std::vector<Scalar>> point, const std::optional<std::string>& init,
           std::optional<unsigned> order) {
  RiquierBasis basis = completeToRiquierBasis(sys.context.nvars, sys.context.ncomponents, sys.generators,
                                              CompletionOptions{.trackCofactors = false});
  std::vector<Scalar> x0 = resolvePoint(sys, basis, std::move(point));
  unsigned T = order.value_or(sys.T.value_or(defaultTruncation(basis)));
  std::map<Derivative, Scalar, RankingLess> initial;
  std::optional<std::string> initText = init ? init : sys.init;
  if (initText) {
    for (auto& [d, v] : parseInitialData(*initText, sys.context)) initial[d] = v;
  }
  Jet u = formalSolve(basis, x0, initial, T);
  json doc = jetToJson(u);
  doc["s0"] = basis.s0;
  doc["parametric"] = derivativeList(parametricUpTo(basis, T), basis.ncomponents);
  return doc;
}

json prop1(const SystemFile& sys, std::optional<std::vector<Scalar>> point, std::optional<unsigned> s) {
  RiquierBasis basis = completeToRiquierBasis(sys.context.nvars, sys.context.ncomponents, sys.generators,
                                              CompletionOptions{.trackCofactors = false});
  std::vector<Scalar> x0 = resolvePoint(sys, basis, std::move(point));
  unsigned order = s.value_or(sys.s.value_or(basis.s0));
  ConstraintSystem c = constraintMatrix(basis, order, x0);
  std::size_t rank = linalg::rank(c.rows, c.columns.size());
  std::size_t parametric = parametricUpTo(basis, order).size();
  return {{"point", scalarList(x0)},
          {"s", order},
          {"s0", basis.s0},
          {"rows", c.rows.size()},
          {"columns", c.columns.size()},
          {"rank", rank},
          {"nullity", c.columns.size() - rank},
          {"parametric_count", parametric},
          {"consistent", c.columns.size() - rank == parametric}};
}

json verifyWitness(const SystemFile& sys, const OperatorVector& q, const Polynomial& w,
                   const std::vector<OperatorVector>& cofactors) {
  Witness witness{w, cofactors};
  return {{"valid", weyl::verifyWitness(witness, q, sys.generators)}};
}

std::vector<OperatorVector> parseCofactors(const std::string& text, const ParseContext& ctx) {
  ParseContext scalarCtx{ctx.nvars, 1, ctx.field};
  std::vector<OperatorVector> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k == text.size() || text[k] == ';') {
      out.push_back(parseOperator(std::string_view(text).substr(start, k - start), scalarCtx));
      start = k + 1;
    }
  }
  return out;
}

}  // namespace weyl::commands
