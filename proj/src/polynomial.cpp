#include "weyl/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>
#include <stdexcept>
#include <utility>

namespace weyl {

Polynomial::Polynomial(std::size_t nvars, const Scalar& c) : nvars_(nvars) {
  if (!c.isZero()) terms_.push_back({MultiIndex(nvars), c});
}

Polynomial Polynomial::monomial(MultiIndex exponent, Scalar coefficient) {
  Polynomial p(exponent.size());
  if (!coefficient.isZero()) p.terms_.push_back({std::move(exponent), std::move(coefficient)});
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t j) {
  if (j >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(MultiIndex::unit(nvars, j), Scalar(1));
}

Polynomial Polynomial::fromTerms(std::size_t nvars, std::vector<Term> terms) {
  std::map<MultiIndex, Scalar, GrlexGreater> acc;
  for (auto& t : terms) {
    if (t.exponent.size() != nvars) throw std::invalid_argument("monomial has wrong number of variables");
    if (t.coefficient.isZero()) continue;
    auto [it, fresh] = acc.try_emplace(std::move(t.exponent), t.coefficient);
    if (!fresh) it->second += t.coefficient;
  }
  Polynomial p(nvars);
  p.terms_.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (!c.isZero()) p.terms_.push_back({e, std::move(c)});
  }
  return p;
}

Scalar Polynomial::constantValue() const {
  if (terms_.empty()) return Scalar(0);
  if (!isConstant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coefficient;
}

unsigned Polynomial::degreeIn(std::size_t j) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponent[j]);
  return d;
}

void Polynomial::checkCompatible(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials live in different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

namespace {

// Merge of two sorted term lists; sign = +1 or -1 applied to b.
std::vector<Polynomial::Term> mergeTerms(const std::vector<Polynomial::Term>& a,
                                         const std::vector<Polynomial::Term>& b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlexLess(b[j].exponent, a[i].exponent))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlexLess(a[i].exponent, b[j].exponent)) {
      out.push_back(b[j++]);
      if (subtract) out.back().coefficient = -out.back().coefficient;
    } else {
      Scalar c = subtract ? a[i].coefficient - b[j].coefficient : a[i].coefficient + b[j].coefficient;
      if (!c.isZero()) out.push_back({a[i].exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  checkCompatible(o);
  if (o.terms_.empty()) return *this;
  terms_ = mergeTerms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  checkCompatible(o);
  if (o.terms_.empty()) return *this;
  terms_ = mergeTerms(terms_, o.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.isZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

namespace {

// Integer image of a real polynomial: packed exponents and the coefficients
// times den. Coefficients already integral are borrowed, not copied.
struct IntegerImage {
  std::vector<std::uint64_t> keys;
  std::vector<mpz_srcptr> coefficients;
  std::vector<mpz_class> owned;
  mpz_class den = 1;
  std::size_t maxBits = 0;
};

constexpr std::uint64_t kKroneckerMinProducts = 4096;
constexpr std::uint64_t kKroneckerMinSide = 16;
constexpr unsigned __int128 kKroneckerMaxLimbs = 1u << 23;

// Packs sum_i c_i t^(key_i) at t = 2^(limbs * GMP_NUMB_BITS) into one integer.
mpz_class packImage(const IntegerImage& img, const mpz_class& multiplier, std::size_t limbs) {
  std::size_t top = 0;
  for (auto k : img.keys) top = std::max<std::size_t>(top, static_cast<std::size_t>(k));
  const std::size_t n = (top + 1) * limbs;
  std::vector<mp_limb_t> pos(n, 0), neg(n, 0);
  mpz_class scaled;
  for (std::size_t i = 0; i < img.keys.size(); ++i) {
    mpz_srcptr c = img.coefficients[i];
    if (multiplier != 1) {
      mpz_mul(scaled.get_mpz_t(), c, multiplier.get_mpz_t());
      c = scaled.get_mpz_t();
    }
    auto& target = mpz_sgn(c) > 0 ? pos : neg;
    const mp_limb_t* src = mpz_limbs_read(c);
    std::copy(src, src + mpz_size(c), target.begin() + static_cast<std::ptrdiff_t>(img.keys[i] * limbs));
  }
  mpz_t pv, nv;
  mpz_roinit_n(pv, pos.data(), static_cast<mp_size_t>(n));
  mpz_roinit_n(nv, neg.data(), static_cast<mp_size_t>(n));
  mpz_class out;
  mpz_sub(out.get_mpz_t(), pv, nv);
  return out;
}

// Balanced base-2^(limbs * GMP_NUMB_BITS) digits of sum_k a_k(t) b_k(t).
template <typename ImageOf>
std::vector<std::pair<std::uint64_t, mpz_class>> kroneckerSum(std::span<const ProductPair> pairs, ImageOf&& imageOf,
                                                              const std::vector<mpz_class>& multipliers,
                                                              std::size_t size, std::size_t limbs) {
  mpz_class total, product;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    mpz_class a = packImage(imageOf(pairs[k].first), multipliers[k], limbs);
    mpz_class b = packImage(imageOf(pairs[k].second), 1, limbs);
    mpz_mul(product.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    total += product;
  }
  const int sign = sgn(total);
  const mp_limb_t* data = mpz_limbs_read(total.get_mpz_t());
  const std::size_t n = mpz_size(total.get_mpz_t());
  const std::size_t digitBits = limbs * GMP_NUMB_BITS;
  mpz_class base, half;
  mpz_setbit(base.get_mpz_t(), digitBits);
  mpz_setbit(half.get_mpz_t(), digitBits - 1);
  std::vector<std::pair<std::uint64_t, mpz_class>> out;
  bool carry = false;
  for (std::size_t k = 0; k < size; ++k) {
    const std::size_t begin = k * limbs;
    mpz_class d;
    if (begin < n) {
      mpz_t view;
      mpz_roinit_n(view, data + begin, static_cast<mp_size_t>(std::min(limbs, n - begin)));
      d = mpz_class(view);
    }
    if (carry) d += 1;
    carry = d >= half;
    if (carry) d -= base;
    if (sgn(d) != 0) out.emplace_back(k, sign < 0 ? mpz_class(-d) : std::move(d));
  }
  return out;
}

// sum_k a_k * b_k over real polynomials with integer accumulation. Exponents
// are packed into one index (Kronecker substitution); nullopt when some
// coefficient is complex or the packed range does not fit.
std::optional<std::vector<Polynomial::Term>> realSumOfProducts(std::size_t m, std::span<const ProductPair> pairs) {
  std::vector<unsigned> span(m, 0);
  std::unordered_map<const Polynomial*, std::vector<unsigned>> tops;
  auto topOf = [&](const Polynomial* p) -> const std::vector<unsigned>& {
    auto [it, fresh] = tops.try_emplace(p);
    if (fresh) {
      it->second.assign(m, 0);
      for (const auto& t : p->terms())
        for (std::size_t j = 0; j < m; ++j) it->second[j] = std::max(it->second[j], t.exponent[j]);
    }
    return it->second;
  };
  for (const auto& [a, b] : pairs) {
    for (const auto* p : {a, b}) {
      for (const auto& t : p->terms()) {
        if (!t.coefficient.isReal()) return std::nullopt;
      }
    }
    const auto& ta = topOf(a);
    const auto& tb = topOf(b);
    for (std::size_t j = 0; j < m; ++j) span[j] = std::max(span[j], ta[j] + tb[j]);
  }
  std::vector<std::uint64_t> stride(m, 1);
  unsigned __int128 size = 1;
  for (std::size_t j = m; j-- > 0;) {
    stride[j] = static_cast<std::uint64_t>(size);
    size *= span[j] + 1;
    if (size > (static_cast<unsigned __int128>(1) << 62)) return std::nullopt;
  }
  auto pack = [&](const MultiIndex& e) {
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < m; ++j) k += stride[j] * e[j];
    return k;
  };
  std::unordered_map<const Polynomial*, IntegerImage> images;
  auto imageOf = [&](const Polynomial* p) -> const IntegerImage& {
    auto [it, fresh] = images.try_emplace(p);
    if (!fresh) return it->second;
    IntegerImage& img = it->second;
    for (const auto& t : p->terms()) mpz_lcm(img.den.get_mpz_t(), img.den.get_mpz_t(), t.coefficient.real().get_den_mpz_t());
    img.keys.reserve(p->terms().size());
    img.coefficients.reserve(p->terms().size());
    if (img.den != 1) img.owned.reserve(p->terms().size());
    for (const auto& t : p->terms()) {
      img.keys.push_back(pack(t.exponent));
      const mpq_class& c = t.coefficient.real();
      if (img.den == 1) {
        img.coefficients.push_back(c.get_num_mpz_t());
      } else {
        img.owned.push_back(img.den / c.get_den() * c.get_num());
        img.coefficients.push_back(img.owned.back().get_mpz_t());
      }
      img.maxBits = std::max(img.maxBits, mpz_sizeinbase(img.coefficients.back(), 2));
    }
    return img;
  };

  // Each pair contributes (den / (da db)) * a_int * b_int over the common den.
  mpz_class den = 1;
  std::uint64_t products = 0;
  for (const auto& [a, b] : pairs) {
    mpz_class d = imageOf(a).den * imageOf(b).den;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    products += static_cast<std::uint64_t>(a->terms().size()) * b->terms().size();
  }
  std::vector<mpz_class> multipliers;
  multipliers.reserve(pairs.size());
  for (const auto& [a, b] : pairs) multipliers.push_back(den / (imageOf(a).den * imageOf(b).den));

  mpz_class scaled;
  auto accumulate = [&](auto&& slot) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const IntegerImage& ia = imageOf(pairs[k].first);
      const IntegerImage& ib = imageOf(pairs[k].second);
      const bool unit = multipliers[k] == 1;
      for (std::size_t x = 0; x < ia.keys.size(); ++x) {
        mpz_srcptr ca = ia.coefficients[x];
        if (!unit) {
          mpz_mul(scaled.get_mpz_t(), ca, multipliers[k].get_mpz_t());
          ca = scaled.get_mpz_t();
        }
        for (std::size_t y = 0; y < ib.keys.size(); ++y)
          mpz_addmul(slot(ia.keys[x] + ib.keys[y]), ca, ib.coefficients[y]);
      }
    }
  };
  std::uint64_t overlap = 0;
  for (const auto& [a, b] : pairs) overlap += std::min(a->terms().size(), b->terms().size());
  // Packing costs about as much as one pass over the larger factor, so it only
  // pays off when both factors of a typical pair are sizeable.
  std::size_t limbs = 0;
  if (products >= kKroneckerMinProducts && size <= 8 * products && overlap >= kKroneckerMinSide * pairs.size()) {
    std::size_t bits = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const IntegerImage& ia = imageOf(pairs[k].first);
      const IntegerImage& ib = imageOf(pairs[k].second);
      bits = std::max(bits, ia.maxBits + ib.maxBits + mpz_sizeinbase(multipliers[k].get_mpz_t(), 2));
    }
    // Digits hold |coefficient| < 2^(bits + log2(overlap)) with a sign bit to spare.
    std::size_t digitBits = bits + 2;
    while (overlap > 1) {
      ++digitBits;
      overlap = (overlap + 1) / 2;
    }
    limbs = (digitBits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    if (static_cast<unsigned __int128>(size) * limbs > kKroneckerMaxLimbs) limbs = 0;
  }
  std::vector<std::pair<std::uint64_t, mpz_class>> result;
  if (limbs > 0) {
    result = kroneckerSum(pairs, imageOf, multipliers, static_cast<std::size_t>(size), limbs);
  } else if (size <= (1u << 22) && size <= 16 * products + 1024) {
    std::vector<mpz_class> dense(static_cast<std::size_t>(size));
    accumulate([&](std::uint64_t k) { return dense[static_cast<std::size_t>(k)].get_mpz_t(); });
    for (std::size_t k = 0; k < dense.size(); ++k) {
      if (sgn(dense[k]) != 0) result.emplace_back(k, std::move(dense[k]));
    }
  } else {
    std::unordered_map<std::uint64_t, mpz_class> sparse;
    sparse.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(products, 1u << 22)));
    accumulate([&](std::uint64_t k) { return sparse[k].get_mpz_t(); });
    for (auto& [k, c] : sparse) {
      if (sgn(c) != 0) result.emplace_back(k, std::move(c));
    }
  }

  std::vector<Polynomial::Term> terms;
  terms.reserve(result.size());
  for (auto& [k, c] : result) {
    MultiIndex e(m);
    for (std::size_t j = 0; j < m; ++j) {
      e[j] = static_cast<unsigned>(k / stride[j]);
      k %= stride[j];
    }
    if (den == 1) {
      terms.push_back({std::move(e), Scalar(mpq_class(std::move(c)))});
    } else {
      mpq_class q(std::move(c), den);
      q.canonicalize();
      terms.push_back({std::move(e), Scalar(std::move(q))});
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Polynomial::Term& x, const Polynomial::Term& y) { return grlexLess(y.exponent, x.exponent); });
  return terms;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.checkCompatible(b);
  if (a.isZero() || b.isZero()) return Polynomial(a.nvars_);
  if (b.isConstant()) return a * b.terms_[0].coefficient;
  if (a.isConstant()) return b * a.terms_[0].coefficient;
  const ProductPair pair{&a, &b};
  if (auto fast = realSumOfProducts(a.nvars_, std::span(&pair, 1))) {
    Polynomial p(a.nvars_);
    p.terms_ = std::move(*fast);
    return p;
  }
  std::map<MultiIndex, Scalar, GrlexGreater> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      MultiIndex e = s.exponent + t.exponent;
      Scalar c = s.coefficient * t.coefficient;
      auto [it, fresh] = acc.try_emplace(std::move(e), c);
      if (!fresh) it->second += c;
    }
  }
  Polynomial p(a.nvars_);
  p.terms_.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (!c.isZero()) p.terms_.push_back({e, std::move(c)});
  }
  return p;
}

Polynomial sumOfProducts(std::size_t nvars, std::span<const ProductPair> pairs) {
  std::vector<ProductPair> live;
  for (const auto& [a, b] : pairs) {
    if (a->nvars() != nvars || b->nvars() != nvars) throw std::invalid_argument("polynomials in different rings");
    if (!a->isZero() && !b->isZero()) live.push_back({a, b});
  }
  Polynomial out(nvars);
  if (live.empty()) return out;
  if (live.size() == 1) return *live[0].first * *live[0].second;
  if (auto fast = realSumOfProducts(nvars, live)) {
    out.terms_ = std::move(*fast);
    return out;
  }
  for (const auto& [a, b] : live) out += *a * *b;
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(nvars_, Scalar(1));
  Polynomial base(*this);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derive(std::size_t j) const {
  if (j >= nvars_) throw std::out_of_range("derivative variable index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    unsigned a = t.exponent[j];
    if (a == 0) continue;
    MultiIndex e = t.exponent;
    e[j] = a - 1;
    out.push_back({std::move(e), t.coefficient * Scalar(static_cast<long>(a))});
  }
  // Lowering one exponent can reorder terms, so re-sort.
  return fromTerms(nvars_, std::move(out));
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
  Scalar sum(0);
  for (const auto& t : terms_) {
    Scalar v = t.coefficient;
    for (std::size_t j = 0; j < nvars_; ++j) {
      for (unsigned k = 0; k < t.exponent[j]; ++k) v *= point[j];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::monic() const {
  if (isZero() || leadingCoefficient().isOne()) return *this;
  return *this * leadingCoefficient().inverse();
}

std::vector<std::string> defaultVariableNames(std::size_t m) {
  if (m == 1) return {"x"};
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

std::string Polynomial::str() const {
  auto names = defaultVariableNames(nvars_);
  return str(names);
}

std::string Polynomial::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coefficient;
    bool negative = c.isNegativeReal();
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < nvars_; ++j) {
      unsigned a = t.exponent[j];
      if (a == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[j];
      if (a > 1) mono += "^" + std::to_string(a);
    }
    std::string coef = c.isReal() ? c.str() : "(" + c.str() + ")";
    if (mono.empty()) {
      out += coef;
    } else if (c.isOne()) {
      out += mono;
    } else {
      out += coef + "*" + mono;
    }
  }
  return out;
}

Polynomial polyDerive(const Polynomial& p, std::size_t j) {
  if (j < 1 || j > p.nvars()) throw std::out_of_range("polyDerive: variable index out of range");
  return p.derive(j - 1);
}

namespace {

// Exact division of real polynomials in integer arithmetic. With b = (cb/db) B'
// for primitive B', an exact quotient A / B' has integer coefficients, so any
// non-divisible leading coefficient proves that b does not divide a.
std::optional<std::optional<Polynomial>> realDivideExact(const Polynomial& a, const Polynomial& b) {
  const std::size_t m = a.nvars();
  for (const auto* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      if (!t.coefficient.isReal()) return std::nullopt;
    }
  }
  std::vector<unsigned> degA(m, 0), degB(m, 0);
  for (const auto& t : a.terms())
    for (std::size_t j = 0; j < m; ++j) degA[j] = std::max(degA[j], t.exponent[j]);
  for (const auto& t : b.terms())
    for (std::size_t j = 0; j < m; ++j) degB[j] = std::max(degB[j], t.exponent[j]);
  for (std::size_t j = 0; j < m; ++j) {
    if (degB[j] > degA[j]) return std::optional<Polynomial>();
  }
  // Kronecker substitution with digits wide enough for a's exponents: packed
  // keys order monomials lexicographically and exact division becomes
  // univariate. A quotient whose degrees add up with b's stays carry-free, so
  // the univariate identity lifts back.
  std::vector<std::uint64_t> stride(m, 1);
  unsigned __int128 size = 1;
  for (std::size_t j = m; j-- > 0;) {
    stride[j] = static_cast<std::uint64_t>(size);
    size *= degA[j] + 1;
  }
  if (size > (1u << 24)) return std::nullopt;
  auto pack = [&](const MultiIndex& e) {
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < m; ++j) k += stride[j] * e[j];
    return k;
  };
  auto unpack = [&](std::uint64_t k) {
    MultiIndex e(m);
    for (std::size_t j = 0; j < m; ++j) {
      e[j] = static_cast<unsigned>(k / stride[j]);
      k %= stride[j];
    }
    return e;
  };

  auto integral = [](const Polynomial& p, mpz_class& den) {
    den = 1;
    for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.real().get_den_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) out.push_back(den / t.coefficient.real().get_den() * t.coefficient.real().get_num());
    return out;
  };
  mpz_class da, db;
  std::vector<mpz_class> ia = integral(a, da), ib = integral(b, db);
  mpz_class cb = 0;
  for (const auto& c : ib) mpz_gcd(cb.get_mpz_t(), cb.get_mpz_t(), c.get_mpz_t());
  for (auto& c : ib) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());

  std::vector<std::pair<std::uint64_t, std::size_t>> keysB;
  for (std::size_t t = 0; t < b.terms().size(); ++t) keysB.emplace_back(pack(b.terms()[t].exponent), t);
  std::sort(keysB.begin(), keysB.end(), std::greater<>());
  const std::uint64_t topB = keysB.front().first;
  const mpz_class& leadCoef = ib[keysB.front().second];

  std::vector<mpz_class> r(static_cast<std::size_t>(size));
  std::uint64_t top = 0;
  for (std::size_t t = 0; t < a.terms().size(); ++t) {
    std::uint64_t k = pack(a.terms()[t].exponent);
    r[k] = ia[t];
    top = std::max(top, k);
  }
  std::vector<std::pair<MultiIndex, mpz_class>> quotient;
  std::vector<unsigned> degQ(m, 0);
  for (std::uint64_t k = top + 1; k-- > 0;) {
    if (r[k] == 0) continue;
    if (k < topB) return std::optional<Polynomial>();
    if (!mpz_divisible_p(r[k].get_mpz_t(), leadCoef.get_mpz_t())) return std::optional<Polynomial>();
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), r[k].get_mpz_t(), leadCoef.get_mpz_t());
    const std::uint64_t shift = k - topB;
    for (const auto& [kb, t] : keysB) mpz_submul(r[shift + kb].get_mpz_t(), c.get_mpz_t(), ib[t].get_mpz_t());
    MultiIndex e = unpack(shift);
    for (std::size_t j = 0; j < m; ++j) {
      degQ[j] = std::max(degQ[j], e[j]);
      if (degQ[j] + degB[j] > degA[j]) return std::optional<Polynomial>();
    }
    quotient.emplace_back(std::move(e), std::move(c));
  }
  // a / b = (A / da) / (cb B' / db) = (A / B') db / (da cb).
  mpz_class num = db, den = da * cb;
  std::vector<Polynomial::Term> terms;
  terms.reserve(quotient.size());
  for (auto& [e, c] : quotient) {
    mpq_class v(c * num, den);
    v.canonicalize();
    terms.push_back({std::move(e), Scalar(std::move(v))});
  }
  return std::optional<Polynomial>(Polynomial::fromTerms(m, std::move(terms)));
}

}  // namespace

std::optional<Polynomial> divideExact(const Polynomial& a, const Polynomial& b) {
  if (b.isZero()) throw std::domain_error("division by zero polynomial");
  if (a.nvars() != b.nvars()) throw std::invalid_argument("polynomials live in different rings");
  if (b.isConstant()) return a * b.constantValue().inverse();
  if (a.isZero()) return a;
  const auto& lead = b.leadingTerm();
  if (a.totalDegree() < lead.exponent.total()) return std::nullopt;
  if (auto fast = realDivideExact(a, b)) return *fast;
  Scalar leadInv = lead.coefficient.inverse();
  std::map<MultiIndex, Scalar, GrlexGreater> r;
  for (const auto& t : a.terms()) r.emplace(t.exponent, t.coefficient);
  std::vector<Polynomial::Term> quotient;
  while (!r.empty()) {
    auto top = r.begin();
    if (!lead.exponent.divides(top->first)) return std::nullopt;
    MultiIndex shift = top->first - lead.exponent;
    Scalar c = top->second * leadInv;
    r.erase(top);
    for (auto it = b.terms().begin() + 1; it != b.terms().end(); ++it) {
      auto [slot, inserted] = r.try_emplace(it->exponent + shift, -(c * it->coefficient));
      if (inserted) continue;
      slot->second -= c * it->coefficient;
      if (slot->second.isZero()) r.erase(slot);
    }
    quotient.push_back({std::move(shift), std::move(c)});
  }
  return Polynomial::fromTerms(a.nvars(), std::move(quotient));
}

namespace {

// Coefficients of p viewed as a univariate polynomial in x_v, indexed by degree.
std::vector<Polynomial> coefficientsIn(const Polynomial& p, std::size_t v) {
  std::vector<std::vector<Polynomial::Term>> buckets(p.degreeIn(v) + 1);
  for (const auto& t : p.terms()) {
    MultiIndex e = t.exponent;
    unsigned d = e[v];
    e[v] = 0;
    buckets[d].push_back({std::move(e), t.coefficient});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Polynomial::fromTerms(p.nvars(), std::move(b)));
  return out;
}

Polynomial contentIn(const Polynomial& p, std::size_t v);

Polynomial gcdImpl(const Polynomial& a, const Polynomial& b);

Polynomial contentIn(const Polynomial& p, std::size_t v) {
  auto coeffs = coefficientsIn(p, v);
  Polynomial g(p.nvars());
  for (const auto& c : coeffs) {
    if (c.isZero()) continue;
    g = gcdImpl(g, c);
    if (g.isConstant()) break;
  }
  return g;
}

Polynomial leadingCoefficientIn(const Polynomial& p, std::size_t v) {
  return coefficientsIn(p, v).back();
}

// Sparse pseudo-remainder of a by b with respect to x_v.
Polynomial pseudoRemainder(Polynomial a, const Polynomial& b, std::size_t v) {
  unsigned db = b.degreeIn(v);
  Polynomial lb = leadingCoefficientIn(b, v);
  while (!a.isZero() && a.degreeIn(v) >= db) {
    unsigned da = a.degreeIn(v);
    Polynomial la = leadingCoefficientIn(a, v);
    MultiIndex shift(a.nvars());
    shift[v] = da - db;
    a = lb * a - la * Polynomial::monomial(shift, Scalar(1)) * b;
  }
  return a;
}

Polynomial primitivePart(const Polynomial& p, std::size_t v) {
  Polynomial c = contentIn(p, v);
  Polynomial q = c.isConstant() ? p : *divideExact(p, c);
  return q.monic();
}

std::size_t mainVariable(const Polynomial& a, const Polynomial& b) {
  std::size_t best = a.nvars();
  for (std::size_t j = a.nvars(); j-- > 0;) {
    if (a.degreeIn(j) > 0 || b.degreeIn(j) > 0) {
      best = j;
      break;
    }
  }
  return best;
}

bool hasRealCoefficients(const Polynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.coefficient.isReal(); });
}

mpz_class integerContent(const Polynomial& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coefficient.real().get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Integer polynomial with coprime coefficients and positive leading coefficient.
Polynomial integerPrimitive(const Polynomial& p) {
  mpz_class den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.real().get_den_mpz_t());
  Polynomial q = p * Scalar(mpq_class(den));
  mpz_class c = integerContent(q);
  if (sgn(q.leadingCoefficient().real()) < 0) c = -c;
  return c == 1 ? q : q * Scalar(mpq_class(1, c));
}

mpz_class maxNorm(const Polynomial& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    mpz_class v = abs(t.coefficient.real().get_num());
    if (v > m) m = v;
  }
  return m;
}

// p with x_v replaced by the integer xi.
Polynomial substitute(const Polynomial& p, std::size_t v, const mpz_class& xi) {
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), xi.get_mpz_t(), t.exponent[v]);
    MultiIndex e = t.exponent;
    e[v] = 0;
    terms.push_back({std::move(e), t.coefficient * Scalar(mpq_class(power))});
  }
  return Polynomial::fromTerms(p.nvars(), std::move(terms));
}

// Rebuilds a polynomial in x_v from its value at xi via the symmetric xi-adic
// expansion of every coefficient.
Polynomial interpolate(const Polynomial& image, std::size_t v, const mpz_class& xi) {
  std::map<MultiIndex, mpz_class> rest;
  for (const auto& t : image.terms()) rest[t.exponent] = t.coefficient.real().get_num();
  mpz_class half = xi / 2;
  std::vector<Polynomial::Term> terms;
  for (unsigned power = 0; !rest.empty(); ++power) {
    for (auto it = rest.begin(); it != rest.end();) {
      mpz_class digit;
      mpz_fdiv_r(digit.get_mpz_t(), it->second.get_mpz_t(), xi.get_mpz_t());
      if (digit > half) digit -= xi;
      if (digit != 0) {
        MultiIndex e = it->first;
        e[v] += power;
        terms.push_back({std::move(e), Scalar(mpq_class(digit))});
      }
      it->second = (it->second - digit) / xi;
      it = it->second == 0 ? rest.erase(it) : std::next(it);
    }
  }
  return Polynomial::fromTerms(image.nvars(), std::move(terms));
}

bool dividesExactly(const Polynomial& g, const Polynomial& p) { return divideExact(p, g).has_value(); }

// Heuristic gcd over Z: the gcd of images at a large integer point, lifted
// back and confirmed by trial division. Returns the full Z-gcd (content
// included) or nullopt when every attempt fails.
std::optional<Polynomial> heuristicGcd(const Polynomial& a, const Polynomial& b) {
  constexpr int kAttempts = 6;
  constexpr std::size_t kMaxImageBits = 4000000;
  mpz_class ca = integerContent(a), cb = integerContent(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Polynomial pa = integerPrimitive(a), pb = integerPrimitive(b);
  Scalar scale{mpq_class(c)};
  if (pa.isConstant() || pb.isConstant()) return Polynomial(a.nvars(), scale);
  std::size_t v = mainVariable(pa, pb);
  mpz_class xi = 2 * std::min(maxNorm(pa), maxNorm(pb)) + 29;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::size_t bits = mpz_sizeinbase(xi.get_mpz_t(), 2) * std::max(pa.degreeIn(v), pb.degreeIn(v));
    if (bits > kMaxImageBits) return std::nullopt;
    Polynomial ia = substitute(pa, v, xi), ib = substitute(pb, v, xi);
    if (!ia.isZero() && !ib.isZero()) {
      std::optional<Polynomial> image;
      if (ia.isConstant() && ib.isConstant()) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ia.constantValue().real().get_num_mpz_t(), ib.constantValue().real().get_num_mpz_t());
        image = Polynomial(a.nvars(), Scalar(mpq_class(g)));
      } else {
        image = heuristicGcd(ia, ib);
      }
      if (image) {
        Polynomial g = integerPrimitive(interpolate(*image, v, xi));
        if (!g.isZero() && dividesExactly(g, pa) && dividesExactly(g, pb)) return g * scale;
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Polynomial gcdImpl(const Polynomial& a, const Polynomial& b) {
  if (a.isZero()) return b.monic();
  if (b.isZero()) return a.monic();
  if (a.isConstant() || b.isConstant()) return Polynomial(a.nvars(), Scalar(1));
  if (a == b) return a.monic();
  if (hasRealCoefficients(a) && hasRealCoefficients(b)) {
    if (auto g = heuristicGcd(a, b)) return g->monic();
  }
  std::size_t v = mainVariable(a, b);
  unsigned da = a.degreeIn(v), db = b.degreeIn(v);
  if (da == 0) return gcdImpl(a, contentIn(b, v));
  if (db == 0) return gcdImpl(contentIn(a, v), b);

  Polynomial ca = contentIn(a, v), cb = contentIn(b, v);
  Polynomial contentGcd = gcdImpl(ca, cb);
  Polynomial f = ca.isConstant() ? a.monic() : divideExact(a, ca)->monic();
  Polynomial g = cb.isConstant() ? b.monic() : divideExact(b, cb)->monic();
  if (f.degreeIn(v) < g.degreeIn(v)) std::swap(f, g);
  while (true) {
    Polynomial r = pseudoRemainder(f, g, v);
    if (r.isZero()) break;
    if (r.degreeIn(v) == 0) {
      g = Polynomial(a.nvars(), Scalar(1));
      break;
    }
    f = std::move(g);
    g = primitivePart(r, v);
  }
  return (contentGcd * primitivePart(g, v)).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("polynomials live in different rings");
  return gcdImpl(a, b);
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.isZero() || b.isZero()) throw std::invalid_argument("lcm of zero polynomial");
  Polynomial g = gcd(a, b);
  return (*divideExact(a, g) * b).monic();
}

}  // namespace weyl
