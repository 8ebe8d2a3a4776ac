#include "weyl/system_file.hpp"

#include <fstream>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

unsigned parseCount(const std::string& value, std::size_t line) {
  try {
    std::size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size() || v < 0 || v > 1000) throw std::invalid_argument("range");
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw InvalidInput("line " + std::to_string(line) + ": expected a small natural number, got '" + value + "'");
  }
}

std::vector<std::string> splitTopLevel(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k < text.size()) {
      if (text[k] == '(' || text[k] == '[') ++depth;
      if (text[k] == ')' || text[k] == ']') --depth;
    }
    if (k == text.size() || (text[k] == sep && depth == 0)) {
      out.push_back(trim(text.substr(start, k - start)));
      start = k + 1;
    }
  }
  return out;
}

}  // namespace

FieldMode parseFieldMode(std::string_view text) {
  std::string t = trim(text);
  if (t == "real") return FieldMode::Real;
  if (t == "complex") return FieldMode::Complex;
  throw InvalidInput("field must be 'real' or 'complex', got '" + t + "'");
}

SystemFile parseSystemFile(std::string_view text, std::optional<FieldMode> fieldOverride) {
  SystemFile sys;
  struct Pending {
    std::string value;
    std::size_t line;
  };
  std::vector<Pending> rows;
  std::optional<Pending> q, point;
  bool haveVars = false, haveUnknowns = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw InvalidInput("line " + std::to_string(lineNo) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "field") {
      sys.context.field = parseFieldMode(value);
    } else if (key == "vars") {
      sys.context.nvars = parseCount(value, lineNo);
      haveVars = true;
    } else if (key == "unknowns") {
      sys.context.ncomponents = parseCount(value, lineNo);
      haveUnknowns = true;
    } else if (key == "row") {
      rows.push_back({value, lineNo});
    } else if (key == "q") {
      q = Pending{value, lineNo};
    } else if (key == "point") {
      point = Pending{value, lineNo};
    } else if (key == "s") {
      sys.s = parseCount(value, lineNo);
    } else if (key == "T") {
      sys.T = parseCount(value, lineNo);
    } else if (key == "init") {
      sys.init = value;
    } else {
      throw InvalidInput("line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    }
  }
  if (!haveVars) throw InvalidInput("system file lacks 'vars:'");
  if (!haveUnknowns) sys.context.ncomponents = 1;
  if (sys.context.nvars == 0) throw InvalidInput("'vars' must be at least 1");
  if (sys.context.ncomponents == 0) throw InvalidInput("'unknowns' must be at least 1");
  if (fieldOverride) sys.context.field = *fieldOverride;

  auto located = [](const Pending& p, auto&& fn) {
    try {
      return fn(p.value);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(p.line) + ": " + e.message(), e.position());
    }
  };
  for (const auto& r : rows) {
    sys.generators.push_back(located(r, [&](const std::string& v) { return parseRow(v, sys.context); }));
    sys.generatorText.push_back(r.value);
  }
  if (q) sys.candidate = located(*q, [&](const std::string& v) { return parseRow(v, sys.context); });
  if (point) sys.point = located(*point, [&](const std::string& v) { return parsePoint(v, sys.context); });
  return sys;
}

SystemFile loadSystemFile(const std::string& path, std::optional<FieldMode> fieldOverride) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open system file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseSystemFile(buffer.str(), fieldOverride);
}

std::vector<Scalar> parsePoint(std::string_view text, const ParseContext& ctx) {
  auto parts = splitTopLevel(text, ',');
  if (parts.size() != ctx.nvars)
    throw InvalidInput("point needs " + std::to_string(ctx.nvars) + " coordinates, got " + std::to_string(parts.size()));
  std::vector<Scalar> out;
  for (const auto& p : parts) out.push_back(parseConstant(p, ctx));
  return out;
}

std::vector<std::pair<Derivative, Scalar>> parseInitialData(std::string_view text, const ParseContext& ctx) {
  std::vector<std::pair<Derivative, Scalar>> out;
  if (trim(text).empty()) return out;
  for (const auto& entry : splitTopLevel(text, ',')) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw InvalidInput("initial condition '" + entry + "' lacks '='");
    out.emplace_back(parseDerivative(trim(entry.substr(0, eq)), ctx), parseConstant(trim(entry.substr(eq + 1)), ctx));
  }
  return out;
}

}  // namespace weyl
