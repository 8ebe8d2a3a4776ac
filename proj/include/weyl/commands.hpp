#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weyl/closure.hpp"
#include "weyl/jet.hpp"
#include "weyl/riquier.hpp"
#include "weyl/system_file.hpp"

namespace weyl::commands {

// JSON documents shared by the CLI and the Python module. Every exact value
// is a string ("p/q", or "a+b*i" in complex mode); nothing is printed in
// decimal.

nlohmann::json basisToJson(const RiquierBasis& basis);

/// {"derivatives": [{"a,b": "p/q", ...} per unknown], "taylor": [...]} where
/// taylor entries are the derivative values divided by alpha!.
nlohmann::json jetToJson(const Jet& jet);

/// Basis elements, s0 and parametric derivatives up to s (default s0).
nlohmann::json riquier(const SystemFile& sys, std::optional<unsigned> s);

struct MemberOutcome {
  nlohmann::json document;
  bool member = false;
  /// False only when a requested cross-check disagrees with the reduction path.
  bool consistent = true;
};

MemberOutcome member(const SystemFile& sys, const OperatorVector& q, bool crossCheck);

/// Point defaults to the file's point, then to the first regular small
/// integer point; T defaults to the file's T, then to s0 + 4.
nlohmann::json solve(const SystemFile& sys, std::optional<std::vector<Scalar>> point,
                     const std::optional<std::string>& init, std::optional<unsigned> order);

/// Constraint-matrix dimensions, nullity and parametric count at (point, s).
nlohmann::json prop1(const SystemFile& sys, std::optional<std::vector<Scalar>> point, std::optional<unsigned> s);

nlohmann::json verifyWitness(const SystemFile& sys, const OperatorVector& q, const Polynomial& w,
                             const std::vector<OperatorVector>& cofactors);

/// Splits "h1 ; h2 ; ..." and parses each as a scalar operator.
std::vector<OperatorVector> parseCofactors(const std::string& text, const ParseContext& ctx);

}  // namespace weyl::commands
