#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weyl/closure.hpp"
#include "weyl/commands.hpp"
#include "weyl/errors.hpp"
#include "weyl/parser.hpp"
#include "weyl/reduction.hpp"
#include "weyl/system_file.hpp"

namespace py = pybind11;
using namespace weyl;

namespace {

std::optional<FieldMode> fieldOf(const std::optional<std::string>& field) {
  if (!field) return std::nullopt;
  return parseFieldMode(*field);
}

SystemFile systemOf(const std::string& text, const std::optional<std::string>& field) {
  return parseSystemFile(text, fieldOf(field));
}

std::optional<std::vector<Scalar>> pointOf(const SystemFile& sys, const std::optional<std::string>& point) {
  if (!point) return std::nullopt;
  return parsePoint(*point, sys.context);
}

OperatorVector candidateOf(const SystemFile& sys, const std::optional<std::string>& q) {
  if (q) return parseRow(*q, sys.context);
  if (sys.candidate) return *sys.candidate;
  throw InvalidInput("no candidate: pass q or add a 'q:' line");
}

}  // namespace

PYBIND11_MODULE(_weylclosure, mod) {
  mod.doc() = "Exact Weyl-closure membership, Riquier bases and formal jets";

  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidInput>(mod, "InvalidInput", PyExc_ValueError);

  py::class_<OperatorVector>(mod, "Operator")
      .def(py::init([](const std::string& text, std::size_t nvars, std::size_t ncomponents, const std::string& field) {
             return parseRow(text, ParseContext{nvars, ncomponents, parseFieldMode(field)});
           }),
           py::arg("text"), py::arg("nvars") = 1, py::arg("ncomponents") = 1, py::arg("field") = "real")
      .def_property_readonly("nvars", &OperatorVector::nvars)
      .def_property_readonly("ncomponents", &OperatorVector::ncomponents)
      .def_property_readonly("order", &OperatorVector::maxOrder)
      .def("is_zero", &OperatorVector::isZero)
      .def("__str__", &formatOperator)
      .def("__repr__", [](const OperatorVector& p) { return "Operator('" + formatOperator(p) + "')"; })
      .def("__eq__", [](const OperatorVector& a, const OperatorVector& b) { return a == b; })
      .def("__add__", [](const OperatorVector& a, const OperatorVector& b) { return a + b; })
      .def("__sub__", [](const OperatorVector& a, const OperatorVector& b) { return a - b; })
      .def("__neg__", [](const OperatorVector& a) { return -a; })
      .def("__matmul__", &scalarOperatorProduct, "Composition h @ p for a scalar operator h.");

  mod.def(
      "reduce",
      [](const OperatorVector& p, const std::vector<OperatorVector>& generators) {
        RiquierBasis basis = completeToRiquierBasis(generators, CompletionOptions{.trackCofactors = false});
        return reduceFull(p, basis.elements).normalForm;
      },
      py::arg("p"), py::arg("generators"), "Normal form of p modulo the completed generators.");

  mod.def(
      "is_member",
      [](const OperatorVector& q, const std::vector<OperatorVector>& generators) {
        MembershipResult r = weylClosureMember(q, generators);
        py::dict out;
        out["member"] = r.member;
        out["normal_form"] = r.normalForm;
        if (r.witness) {
          out["w"] = r.witness->w.str();
          out["cofactors"] = r.witness->cofactors;
        }
        return out;
      },
      py::arg("q"), py::arg("generators"));

  mod.def(
      "verify_witness",
      [](const OperatorVector& q, const std::vector<OperatorVector>& generators, const std::string& w,
         const std::vector<OperatorVector>& cofactors) {
        ParseContext ctx{q.nvars(), 1, FieldMode::Complex};
        return verifyWitness(Witness{parsePolynomial(w, ctx), cofactors}, q, generators);
      },
      py::arg("q"), py::arg("generators"), py::arg("w"), py::arg("cofactors"));

  // System-file level commands return the CLI's JSON documents as text.
  mod.def(
      "riquier_json",
      [](const std::string& system, std::optional<unsigned> s, std::optional<std::string> field) {
        return commands::riquier(systemOf(system, field), s).dump();
      },
      py::arg("system"), py::arg("s") = py::none(), py::arg("field") = py::none());

  mod.def(
      "member_json",
      [](const std::string& system, std::optional<std::string> q, bool crossCheck, std::optional<std::string> field) {
        SystemFile sys = systemOf(system, field);
        auto outcome = commands::member(sys, candidateOf(sys, q), crossCheck);
        outcome.document["consistent"] = outcome.consistent;
        return outcome.document.dump();
      },
      py::arg("system"), py::arg("q") = py::none(), py::arg("cross_check") = false, py::arg("field") = py::none());

  mod.def(
      "solve_json",
      [](const std::string& system, std::optional<std::string> point, std::optional<std::string> init,
         std::optional<unsigned> order, std::optional<std::string> field) {
        SystemFile sys = systemOf(system, field);
        return commands::solve(sys, pointOf(sys, point), init, order).dump();
      },
      py::arg("system"), py::arg("point") = py::none(), py::arg("init") = py::none(), py::arg("order") = py::none(),
      py::arg("field") = py::none());

  mod.def(
      "prop1_json",
      [](const std::string& system, std::optional<std::string> point, std::optional<unsigned> s,
         std::optional<std::string> field) {
        SystemFile sys = systemOf(system, field);
        return commands::prop1(sys, pointOf(sys, point), s).dump();
      },
      py::arg("system"), py::arg("point") = py::none(), py::arg("s") = py::none(), py::arg("field") = py::none());
}
