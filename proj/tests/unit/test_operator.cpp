#include "../support/oracles.hpp"
#include "../support/random_systems.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace weyl;
using namespace weyl::testing;

TEST_CASE("standard ranking") {
  auto d = [](std::size_t i, MultiIndex a) { return Derivative{i, std::move(a)}; };
  CHECK(compareDerivatives(d(1, {0, 0}), d(0, {1, 0})) < 0);
  CHECK(compareDerivatives(d(0, {0, 1}), d(1, {1, 0})) < 0);
  CHECK(compareDerivatives(d(0, {0, 2}), d(0, {1, 1})) < 0);
  auto all = derivativesUpTo(2, 2, 2);
  CHECK(all.size() == 12);
  for (std::size_t k = 1; k < all.size(); ++k) CHECK(compareDerivatives(all[k - 1], all[k]) < 0);
}

TEST_CASE("commutation relation") {
  // D x = x D + 1
  CHECK(op("D*x") == op("x*D + 1"));
  CHECK(op("D1*x2", 2) == op("x2*D1", 2));
  CHECK(op("(-D+x)*(D+x)") == op("-D^2 + x^2 - 1"));
  CHECK(applyD(0, op("x^2")) == op("x^2*D + 2*x"));
  CHECK(leftMultiplyByD(MultiIndex{2}, op("x")) == op("x*D^2 + 2*D"));
}

TEST_CASE("operator products act as composition") {
  RandomSystems rnd(21);
  for (int k = 0; k < 80; ++k) {
    std::size_t m = 1 + k % 2;
    Shape shape{m, 1, 2, 2, 3, 3};
    OperatorVector p = rnd.polynomialOperator(shape);
    OperatorVector h = rnd.scalarOperator(m, 2, 2, 3);
    RationalFunction u(rnd.nonzeroPolynomial(m, 5, 4, 4));
    CHECK(act(scalarOperatorProduct(h, p), u) == act(h, act(p, u)));
  }
}

TEST_CASE("products with rational coefficients") {
  OperatorVector h = OperatorVector::scalarMonomial(MultiIndex{1}, RationalFunction(poly("1"), poly("x")));
  OperatorVector p = OperatorVector::scalar(1, RationalFunction(poly("1"), poly("x + 1")));
  RationalFunction u(poly("x^3 - 2"));
  CHECK(act(scalarOperatorProduct(h, p), u) == act(h, act(p, u)));
}

TEST_CASE("vector operators and shape checks") {
  OperatorVector p = op("D1 [u1] + (x2)*D1 [u2]", 2, 2);
  CHECK(p.ncomponents() == 2);
  CHECK(p.maxOrder() == 1);
  CHECK(p.highestDerivative() == Derivative{1, MultiIndex{1, 0}});
  CHECK(isPolynomialRow(p));
  CHECK_THROWS(p.checkSameShape(op("D1", 2, 1)));
  CHECK(op("D", 1).embed(2, 1) == op("D [u2]", 1, 2));
  CHECK((p - p).isZero());
  std::vector<Scalar> x0{Scalar(1), Scalar(3)};
  auto slice = cfSlice(p, 1, x0);
  CHECK(slice.size() == derivativesUpTo(2, 2, 1).size());
}
