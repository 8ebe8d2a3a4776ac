#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weyl/multi_index.hpp"
#include "weyl/scalar.hpp"

namespace weyl {

/// Sparse multivariate polynomial over Q or Q(i) in m variables.
///
/// Terms are kept in strictly decreasing graded-lex order with no zero
/// coefficients, so equal polynomials have identical term lists.
class Polynomial {
 public:
  struct Term {
    MultiIndex exponent;
    Scalar coefficient;
    bool operator==(const Term&) const = default;
  };

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, const Scalar& c);

  static Polynomial monomial(MultiIndex exponent, Scalar coefficient);
  /// x_j, 0-based.
  static Polynomial variable(std::size_t nvars, std::size_t j);
  /// Builds from arbitrary (unsorted, possibly repeated) terms.
  static Polynomial fromTerms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool isZero() const noexcept { return terms_.empty(); }
  bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.isZero()); }
  bool isOne() const { return isConstant() && !isZero() && terms_[0].coefficient.isOne(); }
  /// Value of a constant polynomial; 0 for the zero polynomial.
  Scalar constantValue() const;

  const Term& leadingTerm() const { return terms_.front(); }
  const Scalar& leadingCoefficient() const { return terms_.front().coefficient; }
  unsigned totalDegree() const { return terms_.empty() ? 0 : terms_.front().exponent.total(); }
  unsigned degreeIn(std::size_t j) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial sumOfProducts(std::size_t nvars, std::span<const std::pair<const Polynomial*, const Polynomial*>> pairs);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned e) const;

  /// Partial derivative with respect to x_j (0-based). Throws std::out_of_range.
  Polynomial derive(std::size_t j) const;
  Scalar evaluate(std::span<const Scalar> point) const;

  /// Scales so that the graded-lex leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  /// Human-readable form using the given variable names, e.g. "x^2 - 2*x + 1".
  std::string str(std::span<const std::string> names) const;
  /// Same, with default names (x for m = 1, x1..xm otherwise).
  std::string str() const;

 private:
  void checkCompatible(const Polynomial& o) const;

  std::size_t nvars_;
  std::vector<Term> terms_;
};

using ProductPair = std::pair<const Polynomial*, const Polynomial*>;

/// sum_k a_k * b_k without forming the individual products.
Polynomial sumOfProducts(std::size_t nvars, std::span<const ProductPair> pairs);

/// d p / d x_j for 1-based j, range-checked.
Polynomial polyDerive(const Polynomial& p, std::size_t j);

/// Quotient a / b if b divides a exactly.
std::optional<Polynomial> divideExact(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Monic least common multiple of two nonzero polynomials.
Polynomial lcm(const Polynomial& a, const Polynomial& b);

/// Default variable names for m variables.
std::vector<std::string> defaultVariableNames(std::size_t m);

}  // namespace weyl
