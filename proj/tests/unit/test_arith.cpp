#include <random>

#include "../support/random_systems.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "weyl/rational_function.hpp"

using namespace weyl;
using namespace weyl::testing;

TEST_CASE("scalar arithmetic in Q(i)") {
  Scalar i = Scalar::imaginaryUnit();
  CHECK(i * i == Scalar(-1));
  CHECK((i * i).isReal());
  Scalar z(mpq_class(1, 2), mpq_class(3));
  CHECK(z * z.inverse() == Scalar(1));
  CHECK(parseScalarLiteral(z.str()) == z);
  CHECK(parseScalarLiteral(Scalar::fraction(-7, 3).str()) == Scalar::fraction(-7, 3));
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
  CHECK(factorial(MultiIndex{3, 2}) == 12);
}

TEST_CASE("grlex order and multi-indices") {
  CHECK(grlexLess(MultiIndex{2, 0}, MultiIndex{0, 3}));
  CHECK(grlexLess(MultiIndex{0, 2}, MultiIndex{1, 1}));
  auto all = indicesUpTo(2, 2);
  CHECK(all.size() == 6);
  for (std::size_t k = 1; k < all.size(); ++k) CHECK(grlexLess(all[k - 1], all[k]));
  CHECK(parseMultiIndex("1,2", 2) == MultiIndex{1, 2});
}

TEST_CASE("polynomial basics") {
  Polynomial p = poly("x1^2*x2 - 3*x1 + 2", 2);
  CHECK(p.totalDegree() == 3);
  CHECK(p.degreeIn(0) == 2);
  CHECK(p.derive(0) == poly("2*x1*x2 - 3", 2));
  std::vector<Scalar> at{Scalar(2), Scalar(5)};
  CHECK(p.evaluate(at) == Scalar(16));
  CHECK((p - p).isZero());
  CHECK(p.pow(3) == p * p * p);
}

TEST_CASE("gcd and exact division on random products") {
  RandomSystems rnd(11);
  for (int k = 0; k < 60; ++k) {
    std::size_t m = 1 + k % 3;
    Polynomial g = rnd.nonzeroPolynomial(m, 3, 3, 5);
    Polynomial a = rnd.nonzeroPolynomial(m, 3, 3, 5);
    Polynomial b = rnd.nonzeroPolynomial(m, 3, 3, 5);
    Polynomial ga = g * a, gb = g * b;
    Polynomial d = gcd(ga, gb);
    CHECK(d.leadingCoefficient().isOne());
    // g divides the gcd, and the gcd divides both inputs.
    CHECK(divideExact(d, g.monic()).has_value());
    auto qa = divideExact(ga, d);
    auto qb = divideExact(gb, d);
    REQUIRE(qa.has_value());
    REQUIRE(qb.has_value());
    CHECK(*qa * d == ga);
    CHECK(gcd(*qa, *qb).isOne());
    auto back = divideExact(ga, a);
    REQUIRE(back.has_value());
    CHECK(*back == g);
  }
}

TEST_CASE("exact division rejects non-divisors") {
  Polynomial a = poly("x1^2 + x2", 2);
  CHECK_FALSE(divideExact(a, poly("x1 + 1", 2)).has_value());
  CHECK_FALSE(divideExact(poly("x^3 + 1"), poly("2*x^2")).has_value());
  CHECK(divideExact(poly("x^2 - 1"), poly("x + 1")) == poly("x - 1"));
}

TEST_CASE("products with large and rational coefficients agree with term-by-term expansion") {
  RandomSystems rnd(12);
  for (int k = 0; k < 30; ++k) {
    Polynomial a = rnd.nonzeroPolynomial(2, 6, 8, 1000000) * Scalar::fraction(3, 7);
    Polynomial b = rnd.nonzeroPolynomial(2, 6, 8, 1000000);
    std::vector<Polynomial::Term> naive;
    for (const auto& s : a.terms())
      for (const auto& t : b.terms()) naive.push_back({s.exponent + t.exponent, s.coefficient * t.coefficient});
    CHECK(a * b == Polynomial::fromTerms(2, naive));
  }
  Polynomial c = poly("x + 1") * Scalar::imaginaryUnit();
  CHECK(c * c == poly("x^2 + 2*x + 1") * Scalar(-1));
}

TEST_CASE("lcm and gcd edge cases") {
  CHECK(gcd(Polynomial(1), Polynomial(1)).isZero());
  CHECK(gcd(poly("2*x + 2"), Polynomial(1)) == poly("x + 1"));
  CHECK(lcm(poly("x^2 - 1"), poly("x + 1")) == poly("x^2 - 1"));
}

TEST_CASE("rational functions stay reduced") {
  RationalFunction r(poly("x^2 - 1"), poly("2*x + 2"));
  CHECK(r.numerator() == poly("1/2*x - 1/2"));
  CHECK(r.denominator().isOne());
  RationalFunction s(poly("1"), poly("x"));
  CHECK(s.derive(0) == RationalFunction(poly("-1"), poly("x^2")));
  CHECK((s + s - s * rf("2")).isZero());
  std::vector<Scalar> zero{Scalar(0)};
  CHECK_FALSE(s.definedAt(zero));
  CHECK_THROWS(s.evaluate(zero));
  CHECK_THROWS_AS(RationalFunction(poly("1"), Polynomial(1)), std::domain_error);
  std::vector<RationalFunction> list{s, RationalFunction(poly("1"), poly("x + 1"))};
  CHECK(commonDenominator(list, 1) == poly("x^2 + x"));
}

TEST_CASE("large products and sums of products match naive expansion") {
  RandomSystems rnd(13);
  auto naive = [](const Polynomial& a, const Polynomial& b) {
    std::vector<Polynomial::Term> terms;
    for (const auto& s : a.terms())
      for (const auto& t : b.terms()) terms.push_back({s.exponent + t.exponent, s.coefficient * t.coefficient});
    return Polynomial::fromTerms(a.nvars(), terms);
  };
  for (int k = 0; k < 6; ++k) {
    std::size_t m = 1 + k % 3;
    long range = k % 2 ? 3 : 1000000000000L;
    Polynomial a = rnd.nonzeroPolynomial(m, 14, 200, range);
    Polynomial b = rnd.nonzeroPolynomial(m, 14, 200, range) * Scalar::fraction(5, 3);
    Polynomial c = rnd.nonzeroPolynomial(m, 10, 120, range);
    Polynomial d = -a.pow(2);
    CHECK(a * b == naive(a, b));
    CHECK(a * d == naive(a, d));
    std::vector<ProductPair> pairs{{&a, &b}, {&c, &d}, {&b, &c}};
    CHECK(sumOfProducts(m, pairs) == naive(a, b) + naive(c, d) + naive(b, c));
    std::vector<ProductPair> cancelling{{&a, &b}, {&d, &c}};
    Polynomial minusB = -b;
    cancelling.push_back({&a, &minusB});
    CHECK(sumOfProducts(m, cancelling) == naive(d, c));
  }
}
