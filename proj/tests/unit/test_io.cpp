#include <filesystem>
#include <fstream>

#include "../support/random_systems.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "weyl/commands.hpp"
#include "weyl/errors.hpp"
#include "weyl/system_file.hpp"

using namespace weyl;
using namespace weyl::testing;

TEST_CASE("parsing normal-orders products") {
  OperatorVector p = op("x^2*D^2 - 2*x*D + 2");
  CHECK(p.coefficient({0, MultiIndex{2}}) == rf("x^2"));
  CHECK(p.coefficient({0, MultiIndex{1}}) == rf("-2*x"));
  CHECK(p.coefficient({0, MultiIndex{0}}) == rf("2"));
  CHECK(op("D*x^2") == op("x^2*D + 2*x"));
  CHECK(op("x/2*D") == op("1/2*x*D"));
  CHECK(op("D/(x+1)") == OperatorVector::scalarMonomial(MultiIndex{1}, RationalFunction(poly("1"), poly("x + 1"))) +
                             OperatorVector::scalar(1, RationalFunction(poly("-1"), poly("x^2 + 2*x + 1"))));
  CHECK(op("Dx*y", 2) == op("x2*D1", 2));
  CHECK(op("D ; x", 1, 2) == op("D [u1] + x [u2]", 1, 2));
}

TEST_CASE("canonical formatting") {
  CHECK(formatOperator(op("(-D+x)*(D+x)")) == "-D^2 + (x^2 - 1)");
  CHECK(formatOperator(OperatorVector(1, 1)) == "0");
  CHECK(formatOperator(op("x2*D1 [u2]", 2, 2)) == "(x2)*D1 [u2]");
  CHECK(formatDerivative({1, MultiIndex{1, 1}}, 2) == "D1*D2 [u2]");
}

TEST_CASE("random round trips") {
  RandomSystems rnd(71);
  for (int k = 0; k < 200; ++k) {
    Shape shape{1 + static_cast<std::size_t>(k % 3), 1 + static_cast<std::size_t>(k % 2), 3, 3, 4, 9, 3};
    OperatorVector p = rnd.polynomialOperator(shape);
    p = RationalFunction(Polynomial(shape.m, Scalar::fraction(2, 3)), rnd.nonzeroPolynomial(shape.m, 2, 2, 4)) * p;
    ParseContext ctx{shape.m, shape.n, FieldMode::Real};
    CHECK(parseRow(formatOperator(p), ctx) == p);
  }
  ParseContext complex{1, 1, FieldMode::Complex};
  OperatorVector z = parseRow("(1+2*i)*x*D - i", complex);
  CHECK(parseRow(formatOperator(z), complex) == z);
}

TEST_CASE("parse errors carry positions") {
  ParseContext ctx{1, 1, FieldMode::Real};
  auto positionOf = [&](const std::string& text) -> long {
    try {
      parseRow(text, ctx);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(positionOf("D + ") == 4);
  CHECK(positionOf("x y") == 2);
  CHECK(positionOf("D^") == 2);
  CHECK(positionOf("(x") == 2);
  CHECK(positionOf("i*x") == 0);
  CHECK(positionOf("x2") == 0);
  CHECK(positionOf("x^65") >= 0);
  CHECK(positionOf("1/0") >= 0);
  CHECK(positionOf("x/D") >= 0);
  CHECK_THROWS_AS(parsePolynomial("D", ctx), ParseError);
  CHECK_THROWS_AS(parseConstant("x", ctx), ParseError);
  CHECK(parseDerivative("D^2", ctx) == Derivative{0, MultiIndex{2}});
}

TEST_CASE("system files") {
  SystemFile sys = parseSystemFile(
      "# comment\nfield: real\nvars: 2\nunknowns: 2\nrow: D1 ; -x2\nrow: D2 [u2]\nq: D1*D2 [u1]\npoint: 1, 1/2\ns: 3\nT: 5\ninit: 1 [u1]=1\n");
  CHECK(sys.context.nvars == 2);
  CHECK(sys.context.ncomponents == 2);
  REQUIRE(sys.generators.size() == 2);
  CHECK(sys.generators[0] == op("D1 [u1] - x2 [u2]", 2, 2));
  REQUIRE(sys.candidate.has_value());
  CHECK(sys.point == std::vector<Scalar>{Scalar(1), Scalar::fraction(1, 2)});
  CHECK(sys.s == 3u);
  CHECK(sys.T == 5u);
  auto init = parseInitialData(*sys.init, sys.context);
  REQUIRE(init.size() == 1);
  CHECK(init[0].first == Derivative{0, MultiIndex{0, 0}});
  CHECK_THROWS_AS(parseSystemFile("vars: 1\nbogus: 3\n"), InvalidInput);
  CHECK_THROWS_AS(parseSystemFile("vars: 1\nrow: D +\n"), ParseError);
  CHECK(parseSystemFile("field: real\nvars: 1\nrow: i*D\n", FieldMode::Complex).context.field == FieldMode::Complex);
  CHECK(parseFieldMode("complex") == FieldMode::Complex);
}

TEST_CASE("command documents") {
  SystemFile sys = parseSystemFile("vars: 1\nrow: x^2*D^2 - 2*x*D + 2\n");
  auto outcome = commands::member(sys, op("D^3"), true);
  CHECK(outcome.member);
  CHECK(outcome.consistent);
  CHECK(outcome.document["member"] == true);
  CHECK(outcome.document["witness"]["w"] == "x^2");

  auto riq = commands::riquier(sys, 3u);
  CHECK(riq["s0"] == 2);

  auto jet = commands::solve(parseSystemFile("vars: 1\nrow: D - 1\n"), std::vector<Scalar>{Scalar(0)}, "1=1", 3u);
  CHECK(jet.dump().find("1/6") != std::string::npos);

  auto p1 = commands::prop1(sys, std::vector<Scalar>{Scalar(1)}, 3u);
  CHECK(p1["nullity"] == 2);

  auto h = commands::parseCofactors("D", sys.context);
  CHECK(commands::verifyWitness(sys, op("D^3"), poly("x^2"), h)["valid"] == true);
  CHECK(commands::verifyWitness(sys, op("D^3"), poly("x"), h)["valid"] == false);
}
