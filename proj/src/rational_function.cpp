#include "weyl/rational_function.hpp"

#include <stdexcept>

#include "weyl/errors.hpp"

namespace weyl {

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(num_.nvars(), Scalar(1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.isZero()) throw std::domain_error("rational function with zero denominator");
  if (num_.nvars() != den_.nvars()) throw std::invalid_argument("numerator and denominator in different rings");
  if (num_.isZero()) {
    den_ = Polynomial(num_.nvars(), Scalar(1));
    return;
  }
  if (!den_.isConstant()) {
    Polynomial g = gcd(num_, den_);
    if (!g.isConstant()) {
      num_ = *divideExact(num_, g);
      den_ = *divideExact(den_, g);
    }
  }
  const Scalar& lc = den_.leadingCoefficient();
  if (!lc.isOne()) {
    Scalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::unchecked(Polynomial num, Polynomial den) {
  RationalFunction r(num.nvars());
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalFunction RationalFunction::operator-() const { return unchecked(-num_, den_); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.isZero()) return *this;
  if (isZero()) return *this = o;
  if (den_ == o.den_) {
    if (den_.isOne()) {
      num_ += o.num_;
      return *this;
    }
    return *this = RationalFunction(num_ + o.num_, den_);
  }
  // gcd(n + m d, d) = gcd(n, d) = 1, so no cancellation is possible here.
  if (o.den_.isOne()) return *this = unchecked(num_ + o.num_ * den_, den_);
  if (den_.isOne()) return *this = unchecked(num_ * o.den_ + o.num_, o.den_);
  // With g = gcd(d1, d2), only factors of g can cancel from n1 d2/g + n2 d1/g.
  Polynomial g = gcd(den_, o.den_);
  if (g.isOne()) return *this = unchecked(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Polynomial a = *divideExact(o.den_, g);
  Polynomial b = *divideExact(den_, g);
  Polynomial num = num_ * a + o.num_ * b;
  Polynomial den = den_ * a;
  if (num.isZero()) return *this = RationalFunction(nvars());
  Polynomial h = gcd(num, g);
  if (h.isOne()) return *this = unchecked(std::move(num), std::move(den));
  return *this = unchecked(*divideExact(num, h), *divideExact(den, h));
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (isZero() || o.isZero()) return *this = RationalFunction(nvars());
  if (den_.isOne() && o.den_.isOne()) {
    num_ = num_ * o.num_;
    return *this;
  }
  if (o.isConstant()) {
    num_ *= o.num_.constantValue();
    return *this;
  }
  if (isConstant()) {
    Scalar c = num_.constantValue();
    *this = o;
    num_ *= c;
    return *this;
  }
  // Cross-cancel before multiplying to keep sizes down.
  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  Polynomial n1 = g1.isConstant() ? num_ : *divideExact(num_, g1);
  Polynomial d2 = g1.isConstant() ? o.den_ : *divideExact(o.den_, g1);
  Polynomial n2 = g2.isConstant() ? o.num_ : *divideExact(o.num_, g2);
  Polynomial d1 = g2.isConstant() ? den_ : *divideExact(den_, g2);
  Polynomial num = n1 * n2;
  Polynomial den = d1 * d2;
  Scalar inv = den.leadingCoefficient().inverse();
  return *this = unchecked(num * inv, den * inv);
}

RationalFunction RationalFunction::inverse() const {
  if (isZero()) throw std::domain_error("division by zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

RationalFunction RationalFunction::derive(std::size_t j) const {
  if (j >= nvars()) throw std::out_of_range("derivative variable index out of range");
  if (den_.isOne()) return RationalFunction(num_.derive(j));
  // With d = g e and d' = g f for g = gcd(d, d'), (n/d)' = (n' e - n f) / (d e),
  // and only factors of g can cancel.
  Polynomial dd = den_.derive(j);
  if (dd.isZero()) return unchecked(num_.derive(j), den_);
  Polynomial g = gcd(den_, dd);
  Polynomial e = g.isOne() ? den_ : *divideExact(den_, g);
  Polynomial f = g.isOne() ? dd : *divideExact(dd, g);
  Polynomial num = num_.derive(j) * e - num_ * f;
  if (num.isZero()) return RationalFunction(nvars());
  Polynomial den = den_ * e;
  if (!g.isOne()) {
    Polynomial h = gcd(num, g);
    if (!h.isOne()) {
      num = *divideExact(num, h);
      den = *divideExact(den, h);
    }
  }
  Scalar inv = den.leadingCoefficient().inverse();
  return unchecked(num * inv, den * inv);
}

bool RationalFunction::definedAt(std::span<const Scalar> point) const {
  return !den_.evaluate(point).isZero();
}

Scalar RationalFunction::evaluate(std::span<const Scalar> point) const {
  Scalar d = den_.evaluate(point);
  if (d.isZero()) throw EvaluationAtPole("denominator " + den_.str() + " vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

std::string RationalFunction::str() const {
  if (den_.isOne()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction ratDerive(const RationalFunction& r, std::size_t j) {
  if (j < 1 || j > r.nvars()) throw std::out_of_range("ratDerive: variable index out of range");
  return r.derive(j - 1);
}

Scalar ratEval(const RationalFunction& r, std::span<const Scalar> point) { return r.evaluate(point); }

Polynomial commonDenominator(std::span<const RationalFunction> rs, std::size_t nvars) {
  Polynomial w(nvars, Scalar(1));
  for (const auto& r : rs) {
    if (r.nvars() != nvars) throw std::invalid_argument("commonDenominator: ring mismatch");
    if (r.denominator().isOne()) continue;
    w = lcm(w, r.denominator());
  }
  return w;
}

}  // namespace weyl
