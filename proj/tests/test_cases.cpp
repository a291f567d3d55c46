#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "drpa/agent.hpp"
#include "drpa/cases.hpp"
#include "drpa/certify.hpp"
#include "fixtures.hpp"

using namespace drpa;

TEST_CASE("forest_curve: analytic shape and cost cap") {
  ForestParams p{1.0, 1.0, 0.0, 0.0};
  CHECK(forest_cost_cap(p) == doctest::Approx(0.5));
  auto curve = forest_curve(p, 201);
  for (const auto& s : curve.samples)
    CHECK(s.output == doctest::Approx(std::sqrt(2.0 * s.cost)).epsilon(1e-12));
  CHECK(derivative(curve, 0.5) == doctest::Approx(1.0).epsilon(3e-2));
}

TEST_CASE("forest_curve: type offset shifts the curve vertically") {
  ForestParams base{1.0, 1.0, 0.0, 2.0};
  ForestParams shifted{1.0, 1.0, 0.5, 2.0};
  auto c0 = forest_curve(base, 51);
  auto c1 = forest_curve(shifted, 51);
  CHECK(c1.samples.front().output == doctest::Approx(1.0));
  for (std::size_t i = 0; i < c0.samples.size(); ++i)
    CHECK(c1.samples[i].output == doctest::Approx(c0.samples[i].output + 1.0).epsilon(1e-12));
}

TEST_CASE("forest_curve: outputs double when k doubles") {
  ForestParams k1{1.0, 1.0, 0.0, 0.0};
  ForestParams k2{2.0, 1.0, 0.0, 0.0};
  auto c1 = forest_curve(k1, 51);
  auto c2 = forest_curve(k2, 51);
  // Compare at the costs sampled for k=1 (both domains contain them).
  for (const auto& s : c1.samples) {
    double want = 2.0 * std::sqrt(2.0 * s.cost);
    double got = 2.0 * (std::sqrt(2.0 * s.cost / k2.h));  // formula at k=2
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    CHECK(got == doctest::Approx(2.0 * s.output).epsilon(1e-12));
  }
  CHECK(c2.cost_cap == doctest::Approx(4.0 * c1.cost_cap));
}

TEST_CASE("forest_linear_payoff: paper values") {
  CHECK(forest_linear_payoff({1.0, 1.0, 0.0, 0.0}, 0.5) == doctest::Approx(0.25));
  CHECK(forest_linear_payoff({1.0, 1.0, 1.0, 1.0}, 0.5) == doctest::Approx(0.75));
  CHECK(forest_linear_payoff({2.0, 0.5, 0.3, 1.5}, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("forest_linear_payoff agrees with the generic engine on the sampled curve") {
  ForestParams p{1.0, 1.0, 0.25, 1.5};
  Technology tech = technology_from_curve(forest_curve(p, 2001), "F");
  for (double slope : {0.3, 0.5, 0.7, 0.9}) {
    auto br = best_response(Contract::linear(slope), tech);
    CHECK(br.principal_payoff ==
          doctest::Approx(forest_linear_payoff(p, slope)).epsilon(2e-3));
  }
}

TEST_CASE("forest_ratio_bound: 50 percent at the paper's parameters") {
  auto r0 = forest_ratio_bound({1.0, 1.0, 0.0, 0.0});
  CHECK(r0.payoff_at_half == doctest::Approx(0.25));
  CHECK(r0.surplus_upper_bound == doctest::Approx(0.5));
  CHECK(r0.ratio == doctest::Approx(0.5));

  auto r1 = forest_ratio_bound({1.0, 1.0, 1.0, 1.0});
  CHECK(r1.payoff_at_half == doctest::Approx(0.75));
  CHECK(r1.surplus_upper_bound == doctest::Approx(1.5));
  CHECK(r1.ratio == doctest::Approx(0.5));

  for (int i = 0; i <= 4; ++i) {
    auto r = forest_ratio_bound({1.0, 1.0, 0.25 * i, 1.0});
    CHECK(r.ratio >= 0.5 - 1e-12);
  }
}

TEST_CASE("salesforce_optimal_slope: substitution examples") {
  SalesforceParams p;
  p.cost_low = 0.0;
  p.cost_high = 1.0;
  p.effort_low = 0.0;
  p.effort_high = 1.0;
  p.y0 = 0.0;
  p.outputs = {2.0};
  p.abar = 1.0;
  p.deltas = {0.0};
  p.q = 2.0;
  CHECK(salesforce_optimal_slope(p) == doctest::Approx(0.5));

  p.deltas = {0.5};
  CHECK(salesforce_optimal_slope(p) == doctest::Approx(1.0));  // hits the theta1 cap

  p.deltas = {0.0};
  p.cost_high = 2.0;
  CHECK(salesforce_optimal_slope(p) == doctest::Approx(1.0));  // numerator doubles
}

TEST_CASE("salesforce_optimal_slope: nonpositive worst case errors") {
  SalesforceParams p;
  p.cost_high = 1.0;
  p.effort_high = 1.0;
  p.outputs = {1.0};
  p.deltas = {2.0};
  CHECK_THROWS_WITH_AS(salesforce_optimal_slope(p), "worst-case expected output nonpositive",
                       std::runtime_error);
}

TEST_CASE("salesforce_pair_scenario: bottleneck is the dominated type, gap zero") {
  Scenario s = salesforce_pair_scenario(2.0, 1.0, 3.0, 1.0);
  CHECK(validate_scenario(s).empty());
  auto cert = certify_affine_optimal(s);
  CHECK(cert.certified);
  CHECK(cert.bottleneck == std::optional<std::string>("worst_case"));
  CHECK(*cert.measured_gap == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("salesforce_pair_scenario: identical types certify trivially") {
  Scenario s = salesforce_pair_scenario(2.0, 1.0, 2.0, 1.0);
  auto cert = certify_affine_optimal(s);
  CHECK(cert.certified);
}

TEST_CASE("salesforce_pair_scenario: crossing curves are rejected") {
  // Slope order says the first dominates, endpoint order says the second.
  CHECK_THROWS_AS(salesforce_pair_scenario(3.0, 1.0, 2.0, 2.0), std::runtime_error);
}

TEST_CASE("salesforce_scenario: slope formula equals cbar/g(cbar) on the induced curve") {
  SalesforceParams p;
  p.cost_low = 0.5;
  p.cost_high = 1.5;
  p.effort_low = 0.0;
  p.effort_high = 1.0;
  p.y0 = 1.0;
  p.outputs = {3.0, 5.0};
  p.abar = 0.9;
  p.deltas = {0.2, 0.1};
  p.q = 2.0;

  double slope = salesforce_optimal_slope(p);
  Scenario s = salesforce_scenario(p);
  const Technology* worst = s.find_technology("worst_case");
  REQUIRE(worst != nullptr);
  auto curve = production_curve_at_action_costs(*worst);
  CHECK(slope == doctest::Approx(curve.cost_cap / curve.endpoint_output()).epsilon(1e-12));

  auto cert = certify_affine_optimal(s);
  CHECK(cert.certified);
}
