#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "drpa/agent.hpp"
#include "fixtures.hpp"

using namespace drpa;
using drpa::testing::convex1_curve;
using drpa::testing::convex1_technology;

TEST_CASE("expected_wage basics") {
  Action det{0.0, OutputSpec::deterministic(4.0)};
  CHECK(expected_wage(Contract::linear(0.0), det) == doctest::Approx(0.0));
  CHECK(expected_wage(Contract::affine(1.0, 0.5), det) == doctest::Approx(3.0));

  Action rnd{0.0, OutputSpec::distribution({{0.0, 0.5}, {4.0, 0.5}})};
  CHECK(expected_wage(Contract::affine(0.0, 0.5), rnd) == doctest::Approx(1.0));
}

TEST_CASE("best_response: zero contract picks the outside option") {
  Technology t = convex1_technology();
  auto br = best_response(Contract::linear(0.0), t);
  CHECK(br.action.cost == doctest::Approx(0.0));
  CHECK(br.agent_payoff == doctest::Approx(0.0));
  CHECK(br.principal_payoff == doctest::Approx(0.0));
}

TEST_CASE("best_response: below the threshold the agent declines effort") {
  Technology t = convex1_technology();
  auto br = best_response(Contract::affine(0.0, 0.5), t);  // 0.5 < 2/3
  CHECK(br.action.cost == doctest::Approx(0.0));
}

TEST_CASE("best_response: at indifference the tie breaks to the high effort") {
  Technology t = convex1_technology();
  auto br = best_response(Contract::affine(0.0, 2.0 / 3.0), t);
  CHECK(br.action.cost == doctest::Approx(2.0));
  CHECK(br.agent_payoff == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(br.principal_payoff == doctest::Approx(1.0).epsilon(1e-9));  // g(2) - 2
}

TEST_CASE("extremal_response_affine matches the spec points on CONVEX-1") {
  auto curve = convex1_curve();
  auto low = extremal_response_affine(curve, 0.0, 0.5);
  CHECK(low.cost == doctest::Approx(0.0));
  CHECK(low.surplus == doctest::Approx(0.0));
  auto high = extremal_response_affine(curve, 0.0, 0.8);
  CHECK(high.cost == doctest::Approx(2.0));
  CHECK(high.surplus == doctest::Approx(1.0));
}

TEST_CASE("best_response and extremal_response_affine agree on deterministic technologies") {
  std::mt19937_64 rng(11);
  auto u = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 100; ++trial) {
    Technology t;
    t.type_id = "R";
    t.actions.push_back({0.0, OutputSpec::deterministic(0.0)});
    int n = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i)
      t.actions.push_back({u(0.05, 3.0), OutputSpec::deterministic(u(0.0, 6.0))});
    auto curve = production_curve_at_action_costs(t);
    double theta0 = u(0.0, 1.0);
    double theta1 = u(0.0, 1.0);
    auto br = best_response(Contract::affine(theta0, theta1), t);
    auto ex = extremal_response_affine(curve, theta0, theta1);
    CHECK(br.action.cost == doctest::Approx(ex.cost).epsilon(1e-12));
  }
}

TEST_CASE("theta0 shifts payoffs but never the chosen action") {
  std::mt19937_64 rng(13);
  auto u = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 60; ++trial) {
    Technology t;
    t.type_id = "R";
    t.actions.push_back({0.0, OutputSpec::deterministic(0.0)});
    int n = 2 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      if (rng() % 2 == 0) {
        t.actions.push_back({u(0.05, 2.0), OutputSpec::deterministic(u(0.0, 5.0))});
      } else {
        double p = u(0.2, 0.8);
        t.actions.push_back(
            {u(0.05, 2.0), OutputSpec::distribution({{u(0.0, 3.0), p}, {u(0.0, 6.0), 1 - p}})});
      }
    }
    double theta1 = u(0.0, 1.0);
    auto base = best_response(Contract::affine(0.0, theta1), t);
    double theta0 = u(0.0, 2.0);
    auto shifted = best_response(Contract::affine(theta0, theta1), t);
    CHECK(shifted.action_index == base.action_index);
    CHECK(shifted.agent_payoff == doctest::Approx(base.agent_payoff + theta0).epsilon(1e-12));
    CHECK(shifted.principal_payoff ==
          doctest::Approx(base.principal_payoff - theta0).epsilon(1e-12));
  }
}

TEST_CASE("agent payoff is monotone in theta1 and theta0") {
  Technology t = convex1_technology(41);
  double prev = -1.0;
  for (int i = 0; i <= 50; ++i) {
    double theta1 = i / 50.0;
    auto br = best_response(Contract::affine(0.0, theta1), t);
    CHECK(br.agent_payoff >= prev - 1e-12);
    prev = br.agent_payoff;
  }
  auto a = best_response(Contract::affine(0.2, 0.5), t);
  auto b = best_response(Contract::affine(0.7, 0.5), t);
  CHECK(b.agent_payoff >= a.agent_payoff - 1e-12);
}

TEST_CASE("scaling outputs and theta0 scales payoffs and keeps the action") {
  Technology t;
  t.type_id = "S";
  t.actions.push_back({0.0, OutputSpec::deterministic(0.0)});
  t.actions.push_back({1.0, OutputSpec::deterministic(2.5)});
  t.actions.push_back({2.0, OutputSpec::distribution({{1.0, 0.5}, {7.0, 0.5}})});

  const double lambda = 3.0;
  Technology scaled = t;
  for (auto& a : scaled.actions)
    for (auto& atom : a.output.atoms) atom.output *= lambda;
  // Costs scale with outputs so the argmax index is preserved.
  for (auto& a : scaled.actions) a.cost *= lambda;

  for (double theta1 : {0.3, 0.6, 0.9}) {
    auto base = best_response(Contract::affine(0.1, theta1), t);
    auto big = best_response(Contract::affine(0.1 * lambda, theta1), scaled);
    CHECK(big.action_index == base.action_index);
    CHECK(big.agent_payoff == doctest::Approx(lambda * base.agent_payoff).epsilon(1e-12));
    CHECK(big.principal_payoff ==
          doctest::Approx(lambda * base.principal_payoff).epsilon(1e-12));
  }
}
