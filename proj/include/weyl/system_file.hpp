#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weyl/parser.hpp"

namespace weyl {

/// On-disk description of a system p_j[u] = 0 plus optional query data.
///
///   # comment
///   field: real | complex
///   vars: 2
///   unknowns: 1
///   row: D1 - x2
///   row: D2
///   q: D1*D2            (optional candidate row)
///   point: 1, 2         (optional)
///   s: 3                (optional)
///   T: 6                (optional)
///   init: 1=1, D=0      (optional initial data)
///
/// Rows hold one expression per unknown separated by ';'.
struct SystemFile {
  ParseContext context;
  std::vector<OperatorVector> generators;
  std::vector<std::string> generatorText;
  std::optional<OperatorVector> candidate;
  std::optional<std::vector<Scalar>> point;
  std::optional<unsigned> s;
  std::optional<unsigned> T;
  std::optional<std::string> init;
};

/// Throws InvalidInput (with the line number) on malformed files and
/// ParseError on bad expressions.
SystemFile parseSystemFile(std::string_view text, std::optional<FieldMode> fieldOverride = std::nullopt);

SystemFile loadSystemFile(const std::string& path, std::optional<FieldMode> fieldOverride = std::nullopt);

FieldMode parseFieldMode(std::string_view text);

/// "c1, c2, ..." with m constant entries.
std::vector<Scalar> parsePoint(std::string_view text, const ParseContext& ctx);

/// "<derivative>=<value>, ..." e.g. "1=1, D=-1/2".
std::vector<std::pair<Derivative, Scalar>> parseInitialData(std::string_view text, const ParseContext& ctx);

}  // namespace weyl
