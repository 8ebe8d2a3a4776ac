#include "../support/oracles.hpp"
#include "../support/random_systems.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "weyl/closure.hpp"
#include "weyl/errors.hpp"

using namespace weyl;
using namespace weyl::testing;

TEST_CASE("non-member: the three decision paths agree") {
  std::vector<OperatorVector> gens{op("-D^2 + x^2 - 1")};
  OperatorVector q = op("D + x");
  MembershipResult r = weylClosureMember(q, gens);
  CHECK_FALSE(r.member);
  CHECK_FALSE(r.witness.has_value());
  CHECK_FALSE(r.normalForm.isZero());
  CHECK_FALSE(membershipViaLemma1(q, gens));
  CHECK_FALSE(oracleDivisionMember1D(q, gens[0]));
}

TEST_CASE("member of the closure but not of the left ideal") {
  std::vector<OperatorVector> gens{op("x^2*D^2 - 2*x*D + 2")};
  OperatorVector q = op("D^3");
  MembershipResult r = weylClosureMember(q, gens);
  REQUIRE(r.member);
  REQUIRE(r.witness.has_value());
  CHECK(verifyWitness(*r.witness, q, gens));
  CHECK(r.witness->w == poly("x^2"));
  CHECK(r.witness->cofactors[0] == op("D"));
  Witness wrong{poly("x"), r.witness->cofactors};
  CHECK_FALSE(verifyWitness(wrong, q, gens));
  CHECK_FALSE(verifyWitness(Witness{Polynomial(1), r.witness->cofactors}, q, gens));
}

TEST_CASE("random members carry verified witnesses") {
  RandomSystems rnd(51);
  for (int k = 0; k < 25; ++k) {
    Shape shape{1 + static_cast<std::size_t>(k % 2), 1 + static_cast<std::size_t>((k / 2) % 2), 2, 2, 2, 3, 1};
    auto gens = rnd.generators(shape, 2);
    OperatorVector q = rnd.combination(gens, 1, 1);
    RationalFunction scale(rnd.nonzeroPolynomial(shape.m, 1, 2, 3));
    q = scale * q;
    MembershipResult r = weylClosureMember(q, gens);
    REQUIRE(r.member);
    REQUIRE(r.witness.has_value());
    CHECK(verifyWitness(*r.witness, q, gens));
    CHECK(membershipViaLemma1(q, gens));
  }
}

TEST_CASE("linear solve over F(x)") {
  std::vector<RationalFunction> f{rf("x"), rf("x^2")};
  std::vector<std::vector<RationalFunction>> gs{{rf("1"), rf("x")}};
  auto h = lemma1Solve(f, gs);
  REQUIRE(h.has_value());
  CHECK((*h)[0] == rf("x"));
  CHECK_FALSE(lemma1Solve({rf("1"), rf("1")}, gs).has_value());
}

TEST_CASE("left division oracle") {
  CHECK(oracleDivisionMember1D(op("D^2 - 1"), op("D - 1")));
  CHECK_FALSE(oracleDivisionMember1D(op("D"), op("D^2")));
  CHECK(oracleDivisionMember1D(op("x*D^2"), op("D")));
  CHECK_THROWS_AS(oracleDivisionMember1D(op("D1", 2), op("D1", 2)), InvalidInput);
}

TEST_CASE("non-polynomial input rows are rejected") {
  OperatorVector p = OperatorVector::scalar(1, RationalFunction(poly("1"), poly("x")));
  std::vector<OperatorVector> gens{p};
  CHECK_THROWS_AS(weylClosureMember(op("D"), gens), InvalidInput);
}

TEST_CASE("empty generator list") {
  std::vector<OperatorVector> none;
  MembershipResult zero = weylClosureMember(OperatorVector(1, 1), none);
  CHECK(zero.member);
  REQUIRE(zero.witness.has_value());
  CHECK(zero.witness->w.isOne());
  CHECK(zero.witness->cofactors.empty());
  CHECK_FALSE(weylClosureMember(op("D"), none).member);
}
