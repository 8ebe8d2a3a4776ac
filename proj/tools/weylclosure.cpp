#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "weyl/commands.hpp"
#include "weyl/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNotMember = 1;
constexpr int kInputError = 2;
constexpr int kDisagreement = 3;

void emit(const nlohmann::json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  using namespace weyl;
  CLI::App app{"Weyl closure membership, Riquier bases and formal jets"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> fieldText;
  app.add_option("--field", fieldText, "Coefficient field (default: the file's, else real)")->check(CLI::IsMember({"real", "complex"}));

  std::string path;
  std::optional<unsigned> s, order;
  std::optional<std::string> qText, pointText, initText, wText, hText;
  bool crossCheck = false;

  auto* riquier = app.add_subcommand("riquier", "Complete the system to a Riquier basis");
  riquier->add_option("system", path)->required();
  riquier->add_option("--s", s, "List parametric derivatives up to this order");

  auto* member = app.add_subcommand("member", "Decide membership in the Weyl closure");
  member->add_option("system", path)->required();
  member->add_option("--q", qText, "Candidate row; entries separated by ';'");
  member->add_flag("--cross-check", crossCheck, "Also run the independent decision paths");

  auto* solve = app.add_subcommand("solve", "Truncated formal power-series solution");
  solve->add_option("system", path)->required();
  solve->add_option("--point", pointText);
  solve->add_option("--init", initText, "e.g. \"1=1, D=0\"");
  solve->add_option("--order", order);

  auto* prop1 = app.add_subcommand("prop1", "Jet constraint matrix statistics");
  prop1->add_option("system", path)->required();
  prop1->add_option("--point", pointText);
  prop1->add_option("--s", s);

  auto* verify = app.add_subcommand("verify-witness", "Check w*q = sum h_j*p_j");
  verify->set_help_flag("--help", "Print this help message and exit");
  verify->add_option("system", path)->required();
  verify->add_option("--q", qText);
  verify->add_option("--w", wText)->required();
  verify->add_option("--h", hText, "Cofactors separated by ';'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    SystemFile sys = loadSystemFile(path, fieldText ? std::optional(parseFieldMode(*fieldText)) : std::nullopt);
    auto point = [&]() -> std::optional<std::vector<Scalar>> {
      if (!pointText) return std::nullopt;
      return parsePoint(*pointText, sys.context);
    };
    auto candidate = [&]() {
      if (qText) return parseRow(*qText, sys.context);
      if (sys.candidate) return *sys.candidate;
      throw InvalidInput("no candidate: pass --q or add a 'q:' line");
    };

    if (riquier->parsed()) {
      emit(commands::riquier(sys, s));
    } else if (member->parsed()) {
      auto outcome = commands::member(sys, candidate(), crossCheck);
      emit(outcome.document);
      if (!outcome.consistent) return kDisagreement;
      return outcome.member ? kOk : kNotMember;
    } else if (solve->parsed()) {
      emit(commands::solve(sys, point(), initText, order));
    } else if (prop1->parsed()) {
      emit(commands::prop1(sys, point(), s));
    } else if (verify->parsed()) {
      auto h = commands::parseCofactors(*hText, sys.context);
      emit(commands::verifyWitness(sys, candidate(), parsePolynomial(*wText, sys.context), h));
    }
    return kOk;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
