#include "weyl/scalar.hpp"

#include <stdexcept>

namespace weyl {

const mpq_class& Scalar::imag() const noexcept {
  static const mpq_class zero(0);
  return im_ ? *im_ : zero;
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.re_ = -re_;
  if (im_) r.im_ = -*im_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (o.im_) {
    if (im_) *im_ += *o.im_;
    else im_ = *o.im_;
    dropZeroImaginary();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (o.im_) {
    if (im_) *im_ -= *o.im_;
    else im_ = -*o.im_;
    dropZeroImaginary();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!im_ && !o.im_) {
    re_ *= o.re_;
    return *this;
  }
  const mpq_class& a = re_;
  const mpq_class& b = imag();
  const mpq_class& c = o.re_;
  const mpq_class& d = o.imag();
  mpq_class re = a * c - b * d;
  mpq_class im = a * d + b * c;
  re_ = std::move(re);
  im_ = std::move(im);
  dropZeroImaginary();
  return *this;
}

Scalar Scalar::inverse() const {
  if (isZero()) throw std::domain_error("division by zero");
  if (!im_) return Scalar(1 / re_);
  mpq_class norm = re_ * re_ + *im_ * *im_;
  return Scalar(re_ / norm, -*im_ / norm);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.isZero()) throw std::domain_error("division by zero");
  if (!o.im_) {
    re_ /= o.re_;
    if (im_) *im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::str() const {
  if (!im_) return re_.get_str();
  std::string im;
  if (*im_ == 1) {
    im = "i";
  } else if (*im_ == -1) {
    im = "-i";
  } else {
    im = im_->get_str() + "*i";
  }
  if (sgn(re_) == 0) return im;
  if (im[0] == '-') return re_.get_str() + im;
  return re_.get_str() + "+" + im;
}

namespace {

mpq_class parseRational(const std::string& t) {
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal '" + t + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  q.canonicalize();
  return q;
}

}  // namespace

Scalar parseScalarLiteral(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t += c;
  if (t.empty()) throw std::invalid_argument("empty scalar literal");
  if (t.back() != 'i') return Scalar(parseRational(t));
  // Split "a+b*i" at the last sign that is not leading.
  std::string body = t.substr(0, t.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re = split == std::string::npos ? "0" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (!im.empty() && im[0] == '+') im.erase(0, 1);
  if (im.empty()) im = "1";
  if (im == "-") im = "-1";
  return Scalar(parseRational(re), parseRational(im));
}

mpz_class factorial(const MultiIndex& alpha) {
  mpz_class r = 1;
  for (unsigned a : alpha.exponents()) {
    for (unsigned k = 2; k <= a; ++k) r *= k;
  }
  return r;
}

}  // namespace weyl
