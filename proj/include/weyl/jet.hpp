#pragma once

#include <map>
#include <vector>

#include "weyl/operator.hpp"

namespace weyl {

/// Truncated Taylor data of an n-tuple of functions at a base point.
///
/// Stores derivative values D^alpha u^i (x0) for |alpha| <= order, not series
/// coefficients; divide by alpha! to get the latter. Missing entries read as 0.
struct Jet {
  std::vector<Scalar> basePoint;
  unsigned order = 0;
  std::vector<std::map<MultiIndex, Scalar>> components;

  Jet() = default;
  Jet(std::vector<Scalar> x0, unsigned order, std::size_t n)
      : basePoint(std::move(x0)), order(order), components(n) {}

  std::size_t nvars() const noexcept { return basePoint.size(); }
  std::size_t ncomponents() const noexcept { return components.size(); }

  Scalar value(const Derivative& d) const;
  /// Throws DegreeExceeded past the truncation order.
  void set(const Derivative& d, Scalar v);

  /// The same data cut to a lower order.
  Jet truncated(unsigned newOrder) const;
  bool isZero() const;

  /// Values ordered as derivativesUpTo(m, n, order).
  std::vector<Scalar> flatten() const;
  static Jet fromFlat(std::vector<Scalar> x0, unsigned order, std::size_t n, const std::vector<Scalar>& values);

  /// Structural equality up to stored zeros.
  friend bool operator==(const Jet& a, const Jet& b);
};

/// Jet of p[u] at u's base point, exact through order u.order - deg p.
/// Throws EvaluationAtPole or DegreeExceeded (when u.order < deg p).
Jet applyToJet(const OperatorVector& p, const Jet& u);

}  // namespace weyl
