#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "weyl/multi_index.hpp"
#include "weyl/rational_function.hpp"

namespace weyl {

/// The derivative D^alpha e_i. Components are 0-based internally; printing and
/// the CLI use 1-based unknown names u1..un.
struct Derivative {
  std::size_t component = 0;
  MultiIndex alpha;

  bool operator==(const Derivative&) const = default;
  unsigned order() const noexcept { return alpha.total(); }
  /// True when `other` = D^gamma (*this) for some gamma.
  bool divides(const Derivative& other) const {
    return component == other.component && alpha.divides(other.alpha);
  }
};

/// Standard ranking: lexicographic on (|alpha|, i, alpha_1, ..., alpha_{m-1}).
std::strong_ordering compareDerivatives(const Derivative& a, const Derivative& b);

struct RankingLess {
  bool operator()(const Derivative& a, const Derivative& b) const { return compareDerivatives(a, b) < 0; }
};

/// All derivatives of order <= s for (m, n), increasing in the standard ranking.
std::vector<Derivative> derivativesUpTo(std::size_t m, std::size_t n, unsigned s);

/// Element of B_m(F)^n in standard form: a left F(x)-combination of distinct
/// derivatives. Zero coefficients are never stored, so map equality is
/// operator equality. Iteration runs in increasing ranking order.
class OperatorVector {
 public:
  using TermMap = std::map<Derivative, RationalFunction, RankingLess>;

  OperatorVector() = default;
  OperatorVector(std::size_t m, std::size_t n) : m_(m), n_(n) {}

  /// c * delta.
  static OperatorVector term(std::size_t m, std::size_t n, Derivative d, RationalFunction c);
  /// Scalar operator c * D^alpha (n = 1).
  static OperatorVector scalarMonomial(const MultiIndex& alpha, RationalFunction c);
  /// The scalar operator c (n = 1).
  static OperatorVector scalar(std::size_t m, RationalFunction c);

  std::size_t nvars() const noexcept { return m_; }
  std::size_t ncomponents() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool isZero() const noexcept { return terms_.empty(); }

  /// cf(p)(delta); zero when absent.
  RationalFunction coefficient(const Derivative& d) const;

  /// Adds c * delta in place.
  void addTerm(const Derivative& d, const RationalFunction& c);
  /// *this += c * other, in place.
  void addScaled(const RationalFunction& c, const OperatorVector& other);

  OperatorVector operator-() const;
  OperatorVector& operator+=(const OperatorVector& o);
  OperatorVector& operator-=(const OperatorVector& o);
  friend OperatorVector operator+(OperatorVector a, const OperatorVector& b) { return a += b; }
  friend OperatorVector operator-(OperatorVector a, const OperatorVector& b) { return a -= b; }
  /// Left multiplication by a coefficient.
  friend OperatorVector operator*(const RationalFunction& c, const OperatorVector& p);
  friend bool operator==(const OperatorVector& a, const OperatorVector& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Ranking-maximal derivative of the support; precondition: nonzero.
  const Derivative& highestDerivative() const { return terms_.rbegin()->first; }
  /// Largest |alpha| over the support (0 for the zero operator).
  unsigned maxOrder() const;

  /// Moves every term into component `k` of an n-component vector.
  /// Precondition: this is a scalar operator (n = 1).
  OperatorVector embed(std::size_t n, std::size_t k) const;

  void checkSameShape(const OperatorVector& o) const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 1;
  TermMap terms_;
};

/// D_j * p in standard form (0-based j).
OperatorVector applyD(std::size_t j, const OperatorVector& p);

/// D^beta * p in standard form.
OperatorVector leftMultiplyByD(const MultiIndex& beta, const OperatorVector& p);

/// h * p for a scalar operator h.
OperatorVector scalarOperatorProduct(const OperatorVector& h, const OperatorVector& p);
/// sum_j hs[j] * ps[j] for scalar operators hs[j].
OperatorVector sumOfScalarProducts(std::span<const OperatorVector> hs, std::span<const OperatorVector> ps);

/// Every coefficient has denominator 1.
bool isPolynomialRow(const OperatorVector& p);

/// cf(p)(delta) evaluated at x0 for every delta in Delta_s, in ranking order.
std::vector<Scalar> cfSlice(const OperatorVector& p, unsigned s, std::span<const Scalar> x0);

/// Every coefficient of p is defined at x0.
bool definedAt(const OperatorVector& p, std::span<const Scalar> x0);

}  // namespace weyl
