#pragma once

#include <string>

#include "weyl/operator.hpp"
#include "weyl/parser.hpp"

namespace weyl::testing {

inline OperatorVector op(const std::string& text, std::size_t m = 1, std::size_t n = 1) {
  return parseRow(text, ParseContext{m, n, FieldMode::Real});
}

inline Polynomial poly(const std::string& text, std::size_t m = 1) {
  return parsePolynomial(text, ParseContext{m, 1, FieldMode::Real});
}

inline RationalFunction rf(const std::string& text, std::size_t m = 1) { return RationalFunction(poly(text, m)); }

}  // namespace weyl::testing
