#pragma once

#include <span>
#include <string>
#include <vector>

#include "weyl/polynomial.hpp"

namespace weyl {

/// Element of F(x_1, ..., x_m) kept as num/den with gcd(num, den) = 1 and den
/// monic under graded-lex order. Zero is 0/1.
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t nvars = 0) : num_(nvars), den_(nvars, Scalar(1)) {}
  RationalFunction(std::size_t nvars, const Scalar& c) : num_(nvars, c), den_(nvars, Scalar(1)) {}
  explicit RationalFunction(Polynomial num);
  /// Throws std::domain_error when den is zero.
  RationalFunction(Polynomial num, Polynomial den);

  std::size_t nvars() const noexcept { return num_.nvars(); }
  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool isZero() const noexcept { return num_.isZero(); }
  bool isOne() const { return num_.isOne() && den_.isOne(); }
  bool isPolynomial() const { return den_.isOne(); }
  bool isConstant() const { return num_.isConstant() && den_.isOne(); }

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  RationalFunction inverse() const;

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// d/dx_j, 0-based.
  RationalFunction derive(std::size_t j) const;
  /// Throws EvaluationAtPole when the denominator vanishes at the point.
  Scalar evaluate(std::span<const Scalar> point) const;
  bool definedAt(std::span<const Scalar> point) const;

  std::string str() const;

 private:
  static RationalFunction unchecked(Polynomial num, Polynomial den);

  Polynomial num_;
  Polynomial den_;
};

/// d r / d x_j for 1-based j, range-checked.
RationalFunction ratDerive(const RationalFunction& r, std::size_t j);

Scalar ratEval(const RationalFunction& r, std::span<const Scalar> point);

/// Monic lcm of the denominators; 1 for an empty list.
Polynomial commonDenominator(std::span<const RationalFunction> rs, std::size_t nvars);

}  // namespace weyl
