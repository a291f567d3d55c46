#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "drpa/scenario_io.hpp"
#include "drpa/solvers.hpp"
#include "fixtures.hpp"

using namespace drpa;

namespace {

std::string fixture(const std::string& name) {
  return std::string(DRPA_FIXTURE_DIR) + "/" + name;
}

struct CliRun {
  int status = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.status = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("load_scenario: convex pair fixture parses to two types") {
  Scenario s = load_scenario(fixture("convex_pair.json"));
  CHECK(s.technologies.size() == 2);
  CHECK(s.technologies[0].type_id == "A");
  CHECK(s.ambiguity.variant == AmbiguityVariant::AllDeltas);
  CHECK(s.family.variant == FamilyVariant::Affine);
  CHECK(s.grid.theta1_steps == 2001);
}

TEST_CASE("load_scenario: missing outside option cites Assumption 3") {
  CHECK_THROWS_WITH_AS(load_scenario(fixture("missing_outside_option.json")),
                       doctest::Contains("Assumption 3"), ParseError);
}

TEST_CASE("load_scenario: negative payment cap cites Assumption 6") {
  CHECK_THROWS_WITH_AS(load_scenario(fixture("negative_payment_cap.json")),
                       doctest::Contains("Assumption 6"), ParseError);
}

TEST_CASE("parse_scenario: field-addressed parse errors") {
  CHECK_THROWS_WITH_AS(parse_scenario(R"({"types": [{"id": "X"}]})"),
                       doctest::Contains("types[0]"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_scenario(R"({"types": [{"id": "X", "actions": [{"output": 1.0}]}]})"),
      doctest::Contains("cost"), ParseError);
}

TEST_CASE("parse_scenario: hidden-action fixture round trips") {
  Scenario s = load_scenario(fixture("mixed_actions.json"));
  CHECK(s.technologies.size() == 1);
  CHECK(s.technologies[0].actions[1].output.atoms.size() == 2);
  CHECK(s.family.theta0_max == doctest::Approx(2.0));
  Scenario again = parse_scenario(scenario_to_text(s));
  CHECK(again.technologies[0].actions[1].output.mean() ==
        doctest::Approx(s.technologies[0].actions[1].output.mean()));
}

TEST_CASE("random_scenario: deterministic and valid") {
  Scenario a = random_scenario(1);
  Scenario b = random_scenario(1);
  CHECK(scenario_to_text(a) == scenario_to_text(b));

  RandomScenarioParams p;
  p.max_types = 3;
  p.max_actions = 5;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Scenario s = random_scenario(seed, p);
    CAPTURE(seed);
    CHECK(validate_scenario(s).empty());
    CHECK(s.technologies.size() <= 3);
    for (const auto& t : s.technologies) CHECK(t.actions.size() <= 5);
  }
}

TEST_CASE("random_scenario: affine values match the mean-reduced counterpart") {
  Scenario s = random_scenario(77);
  Scenario reduced = mean_reduced(s);
  CHECK(solve_game_i(s).value == doctest::Approx(solve_game_i(reduced).value).epsilon(1e-12));
}

TEST_CASE("report emission is byte-for-byte reproducible") {
  Scenario s = load_scenario(fixture("bottleneck_pair.json"));
  ReportOptions opts;
  opts.command = "solve-i";
  opts.grid = &s.grid;
  std::string a = report_solve(solve_game_i(s), opts);
  std::string b = report_solve(solve_game_i(s), opts);
  CHECK(a == b);
  CHECK(a.find("\"tool\"") != std::string::npos);
}

TEST_CASE("cli: gaps on the bottleneck pair reports zero gaps") {
  auto r = cli({"gaps", fixture("bottleneck_pair.json")});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"adjustability_gap\": 0.0") != std::string::npos);
  CHECK(r.out.find("\"information_rent\": 0.0") != std::string::npos);
}

TEST_CASE("cli: certify on the bottleneck pair") {
  auto r = cli({"certify", fixture("bottleneck_pair.json")});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"certified\": true") != std::string::npos);
  CHECK(r.out.find("\"bottleneck_type\": \"B\"") != std::string::npos);
}

TEST_CASE("cli: solve-i with a grid override") {
  auto r = cli({"solve-i", fixture("convex_one.json"), "--grid-theta1-steps", "101"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"theta1_steps\": 101") != std::string::npos);
}

TEST_CASE("cli: minimax on the convex pair") {
  auto r = cli({"minimax", fixture("convex_pair.json")});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"gap\": 0.333333") != std::string::npos);
}

TEST_CASE("cli: case-forest reproduces the closed form") {
  auto r = cli({"case-forest", "--k", "1", "--h", "1", "--t", "0", "--p", "0.5"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"payoff_at_p\": 0.25") != std::string::npos);
  CHECK(r.out.find("\"ratio\": 0.5") != std::string::npos);
}

TEST_CASE("cli: case-salesforce certifies a dominating pair") {
  auto r = cli({"case-salesforce", "--cost-high", "1", "--effort-high", "1", "--y", "3",
                "--delta", "0.2"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"certified\": true") != std::string::npos);
  CHECK(r.out.find("\"bottleneck_type\": \"worst_case\"") != std::string::npos);
}

TEST_CASE("cli: validate runs the randomized gate") {
  auto r = cli({"validate", "--count", "5", "--seed", "7"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("PASS 5/5 instances") != std::string::npos);
}

TEST_CASE("cli: unknown command exits nonzero") {
  auto r = cli({"frobnicate"});
  CHECK(r.status != 0);
}

TEST_CASE("cli: parse failure exits nonzero with a diagnostic") {
  auto r = cli({"gaps", fixture("missing_outside_option.json")});
  CHECK(r.status != 0);
  CHECK(r.err.find("Assumption 3") != std::string::npos);
}

TEST_CASE("cli: envelope summarizes classification per type") {
  auto r = cli({"envelope", fixture("concave_one.json")});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"classification\": \"concave\"") != std::string::npos);
}
