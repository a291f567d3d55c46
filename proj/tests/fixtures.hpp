#pragma once

// Shared instances used across the test suites: analytic production curves,
// the two-type pairs, and small scenario builders.

#include <cmath>
#include <functional>

#include "drpa/model.hpp"

namespace drpa::testing {

inline ProductionCurve sampled_curve(const std::function<double(double)>& g, double cbar,
                                     int steps) {
  ProductionCurve curve;
  curve.cost_cap = cbar;
  for (double c : uniform_grid(0.0, cbar, steps)) curve.samples.push_back({c, g(c)});
  return curve;
}

// g(c) = c + c^2/4 on [0, 2]: convex surplus c^2/4, theta1* = 2/3, first best 1.
inline ProductionCurve convex1_curve(int steps = 201) {
  return sampled_curve([](double c) { return c + c * c / 4.0; }, 2.0, steps);
}

// g(c) = 2 sqrt(c) on [0, 1]: concave surplus, adjustability ratio 1/2.
inline ProductionCurve concave1_curve(int steps = 401) {
  return sampled_curve([](double c) { return 2.0 * std::sqrt(c); }, 1.0, steps);
}

inline Technology convex1_technology(int steps = 201) {
  return technology_from_curve(convex1_curve(steps), "C1");
}

inline Technology concave1_technology(int steps = 401) {
  return technology_from_curve(concave1_curve(steps), "K1");
}

// CONVEX-PAIR: A with g = c + c^2 on [0, 1], B with g = 1.5 c on [0, 2].
inline Technology convex_pair_a(int steps = 41) {
  return technology_from_curve(
      sampled_curve([](double c) { return c + c * c; }, 1.0, steps), "A");
}

inline Technology convex_pair_b(int steps = 41) {
  return technology_from_curve(sampled_curve([](double c) { return 1.5 * c; }, 2.0, steps),
                               "B");
}

inline Scenario convex_pair_scenario(AmbiguitySet ambiguity, int steps = 41) {
  Scenario s;
  s.technologies = {convex_pair_a(steps), convex_pair_b(steps)};
  s.ambiguity = std::move(ambiguity);
  s.family = ContractFamilySpec::affine();
  return s;
}

inline Scenario convex_pair_all_deltas(int steps = 41) {
  return convex_pair_scenario(AmbiguitySet::all_deltas({"A", "B"}), steps);
}

inline Scenario convex_pair_even_singleton(int steps = 41) {
  TypeDistribution g0;
  g0.weights = {{"A", 0.5}, {"B", 0.5}};
  return convex_pair_scenario(AmbiguitySet::singleton(g0), steps);
}

// BOTTLENECK-PAIR: A with g = c + c^2/4, B with g = c + c^2/8, both on [0, 2].
// B minimizes both the efficiency ratio (1.25 < 1.5) and the level (2.5 < 3).
inline Scenario bottleneck_pair_scenario(int steps = 41) {
  Scenario s;
  s.technologies = {
      technology_from_curve(sampled_curve([](double c) { return c + c * c / 4.0; }, 2.0, steps),
                            "A"),
      technology_from_curve(sampled_curve([](double c) { return c + c * c / 8.0; }, 2.0, steps),
                            "B")};
  s.ambiguity = AmbiguitySet::all_deltas({"A", "B"});
  s.family = ContractFamilySpec::affine();
  return s;
}

inline Scenario single_type_scenario(Technology tech, FamilyVariant family) {
  Scenario s;
  std::string id = tech.type_id;
  s.technologies = {std::move(tech)};
  s.ambiguity = AmbiguitySet::all_deltas({id});
  switch (family) {
    case FamilyVariant::Affine: s.family = ContractFamilySpec::affine(); break;
    case FamilyVariant::Linear: s.family = ContractFamilySpec::linear(); break;
    case FamilyVariant::Constant: s.family = ContractFamilySpec::constant(); break;
    case FamilyVariant::General: s.family = ContractFamilySpec::general({}, 0.0); break;
  }
  return s;
}

}  // namespace drpa::testing
