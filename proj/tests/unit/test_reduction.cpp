#include "../support/random_systems.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "weyl/errors.hpp"
#include "weyl/reduction.hpp"
#include "weyl/riquier.hpp"

using namespace weyl;
using namespace weyl::testing;

TEST_CASE("head data and monic scaling") {
  OperatorVector p = op("x^2*D^2 - 2*x*D + 2");
  HeadData h = headOf(p);
  CHECK(h.head == Derivative{0, MultiIndex{2}});
  CHECK(h.degree == 2);
  CHECK(h.headCoefficient == rf("x^2"));
  CHECK(headOf(makeMonic(p)).headCoefficient.isOne());
  CHECK_THROWS_AS(headOf(OperatorVector(1, 1)), ZeroOperator);
}

TEST_CASE("reduction by a single rule") {
  std::vector<OperatorVector> rules{makeMonic(op("-D^2 + x^2 - 1"))};
  ReductionTrace t = reduceFull(op("D^3"), rules);
  CHECK(isReduced(t.normalForm, rules));
  CHECK(reconstruct(t, rules) == op("D^3"));
  CHECK(t.normalForm.maxOrder() <= 1);
  CHECK(reduceFull(op("D + x"), rules).normalForm == op("D + x"));
}

namespace {

std::vector<OperatorVector> randomBasis(RandomSystems& rnd, const Shape& shape) {
  auto gens = rnd.generators(shape, 3);
  return completeToRiquierBasis(shape.m, shape.n, gens, CompletionOptions{.trackCofactors = false}).elements;
}

}  // namespace

TEST_CASE("reduction reconstructs its input and is strategy independent") {
  RandomSystems rnd(31);
  int nonzero = 0;
  for (int k = 0; k < 40; ++k) {
    Shape shape{1 + static_cast<std::size_t>(k % 2), 1 + static_cast<std::size_t>((k / 2) % 2), 2, 2, 3, 3, 1};
    auto rules = randomBasis(rnd, shape);
    if (rules.empty()) continue;
    OperatorVector p = rnd.polynomialOperator(Shape{shape.m, shape.n, 3, 2, 4, 3, 1});
    ReductionTrace t = reduceFull(p, rules);
    CHECK(reconstruct(t, rules) == p);
    CHECK(isReduced(t.normalForm, rules));
    std::mt19937_64 pickRng(k);
    auto randomPick = [&](const std::vector<ReductionChoice>& c) {
      return std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(pickRng);
    };
    ReductionTrace u = reduceWithStrategy(p, rules, randomPick);
    CHECK(u.normalForm == t.normalForm);
    CHECK(reconstruct(u, rules) == p);
    ReductionTrace h = reduceHead(p, rules);
    CHECK(h.normalForm.isZero() == t.normalForm.isZero());
    CHECK(reconstruct(h, rules) == p);
    nonzero += !t.normalForm.isZero();
  }
  CHECK(nonzero > 0);
}

TEST_CASE("members reduce to zero") {
  RandomSystems rnd(32);
  for (int k = 0; k < 20; ++k) {
    Shape shape{2, 1, 2, 1, 2, 2, 1};
    auto gens = rnd.generators(shape, 2);
    auto basis = completeToRiquierBasis(2, 1, gens, CompletionOptions{.trackCofactors = false});
    OperatorVector q = rnd.combination(gens, 2, 1);
    CHECK(reduceFull(q, basis.elements).normalForm.isZero());
  }
}
