#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "weyl/multi_index.hpp"

namespace weyl {

enum class FieldMode { Real, Complex };

/// Exact element of Q or Q(i). Real-mode values simply keep a zero imaginary part.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)) {
    re_.canonicalize();
    if (sgn(im) != 0) {
      im.canonicalize();
      im_ = std::move(im);
    }
  }

  static Scalar fraction(long num, long den) { return Scalar(mpq_class(num, den)); }
  static Scalar imaginaryUnit() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& real() const noexcept { return re_; }
  const mpq_class& imag() const noexcept;

  bool isZero() const { return sgn(re_) == 0 && !im_; }
  bool isOne() const { return !im_ && re_ == 1; }
  bool isReal() const { return !im_; }
  /// Real and strictly negative; used for sign extraction when printing.
  bool isNegativeReal() const { return !im_ && sgn(re_) < 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws std::domain_error on division by zero.
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  /// "p/q" for reals, "a+b*i" / "a-b*i" / "b*i" otherwise.
  std::string str() const;

 private:
  void dropZeroImaginary() {
    if (im_ && sgn(*im_) == 0) im_.reset();
  }

  mpq_class re_{0};
  // Absent for real values, so real arithmetic never touches it.
  std::optional<mpq_class> im_;
};

/// Parses the format produced by Scalar::str().
Scalar parseScalarLiteral(const std::string& text);

/// alpha! as an exact integer.
mpz_class factorial(const MultiIndex& alpha);

}  // namespace weyl
