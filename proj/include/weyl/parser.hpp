#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "weyl/operator.hpp"

namespace weyl {

/// Ambient shape and field for parsing.
struct ParseContext {
  std::size_t nvars = 1;
  std::size_t ncomponents = 1;
  FieldMode field = FieldMode::Real;
};

/// Largest accepted exponent after '^'.
inline constexpr unsigned kMaxExponent = 64;

/// Parses one expression into an n-component operator. Untagged terms land in
/// `defaultComponent` (0-based); a top-level term may carry a "[uK]" tag that
/// moves it to component K. Products are normal-ordered while parsing.
///
/// Grammar (whitespace is ignored):
///   sum     := ['+' | '-'] term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)* ['[' tag ']']
///   unary   := '-' unary | power
///   power   := primary ['^' integer]
///   primary := integer | identifier | '(' sum ')'
/// Identifiers: x1..xm (x, y, z when m <= 3), D1..Dm (D, Dx, Dy, Dz), i in
/// complex mode. The divisor of '/' must be a nonzero coefficient; a / f
/// means a * (1/f). Throws ParseError with the byte offset.
OperatorVector parseOperator(std::string_view text, const ParseContext& ctx, std::size_t defaultComponent = 0);

/// Parses "e_1 ; e_2 ; ... ; e_n" (one expression per component), or a single
/// tagged expression.
OperatorVector parseRow(std::string_view text, const ParseContext& ctx);

/// An expression without D that must reduce to a polynomial.
Polynomial parsePolynomial(std::string_view text, const ParseContext& ctx);

/// An expression without variables or D.
Scalar parseConstant(std::string_view text, const ParseContext& ctx);

/// A single derivative with coefficient 1, e.g. "D^2", "D1*D2 [u2]", "1".
Derivative parseDerivative(std::string_view text, const ParseContext& ctx);

/// Canonical text: terms in decreasing ranking order, numeric coefficients
/// bare, coefficients involving variables parenthesised, "[uK]" tags when n > 1.
std::string formatOperator(const OperatorVector& p);

std::string formatDerivative(const Derivative& d, std::size_t ncomponents);

/// Coefficient text that the parser reads back to the same value.
std::string formatRationalFunction(const RationalFunction& r);

}  // namespace weyl
