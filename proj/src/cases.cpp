#include "drpa/cases.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace drpa {

namespace {

void check_forest(const ForestParams& p) {
  if (p.k <= 0.0 || p.h <= 0.0)
    throw std::invalid_argument("forest: k and h must be positive");
  if (p.t < 0.0 || p.t > 1.0)
    throw std::invalid_argument("forest: t must be in [0, 1]");
  if (p.a0 < 0.0) throw std::invalid_argument("forest: a0 must be nonnegative");
}

}  // namespace

double forest_cost_cap(const ForestParams& p) {
  check_forest(p);
  // g'(c) = k / sqrt(2hc) = 1 at c = k^2 / (2h); surplus declines beyond.
  return p.k * p.k / (2.0 * p.h);
}

ProductionCurve forest_curve(const ForestParams& p, int steps) {
  check_forest(p);
  double cbar = forest_cost_cap(p);
  ProductionCurve curve;
  curve.cost_cap = cbar;
  for (double c : uniform_grid(0.0, cbar, steps)) {
    double g = p.k * (std::sqrt(2.0 * c / p.h) + p.t * p.a0);
    curve.samples.push_back({c, g});
  }
  return curve;
}

double forest_linear_payoff(const ForestParams& p, double slope) {
  check_forest(p);
  if (slope <= 0.0 || slope > 1.0)
    throw std::invalid_argument("forest: contract slope must be in (0, 1]");
  return (1.0 - slope) * p.k * (slope * p.k / p.h + p.t * p.a0);
}

ForestRatio forest_ratio_bound(const ForestParams& p) {
  check_forest(p);
  ForestRatio r;
  r.payoff_at_half = forest_linear_payoff(p, 0.5);
  r.surplus_upper_bound = p.k * p.k / (2.0 * p.h) + p.k * p.t * p.a0;
  r.ratio = r.payoff_at_half / r.surplus_upper_bound;
  return r;
}

namespace {

void check_salesforce(const SalesforceParams& p) {
  if (p.cost_high <= p.cost_low)
    throw std::invalid_argument("salesforce: cost_high must exceed cost_low");
  if (p.effort_high <= p.effort_low)
    throw std::invalid_argument("salesforce: effort_high must exceed effort_low");
  if (p.q <= 1.0) throw std::invalid_argument("salesforce: q must exceed 1");
  if (p.outputs.size() != p.deltas.size())
    throw std::invalid_argument("salesforce: outputs and deltas differ in length");
  if (p.outputs.empty()) throw std::invalid_argument("salesforce: needs output levels");
}

struct SalesforceTerms {
  double nominal = 0.0;    // sum abar (y_i - y0)
  double deviation = 0.0;  // q-norm of delta_i (y_i - y0)
};

SalesforceTerms salesforce_terms(const SalesforceParams& p) {
  SalesforceTerms t;
  double acc = 0.0;
  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    double dy = p.outputs[i] - p.y0;
    t.nominal += p.abar * dy;
    acc += std::pow(std::abs(p.deltas[i] * dy), p.q);
  }
  t.deviation = std::pow(acc, 1.0 / p.q);
  return t;
}

}  // namespace

SalesforceSlopes salesforce_slopes(const SalesforceParams& p) {
  check_salesforce(p);
  SalesforceTerms t = salesforce_terms(p);
  SalesforceSlopes s;
  s.cost_cap = p.cost_high - p.cost_low;
  double de = p.effort_high - p.effort_low;
  s.slope_worst = de * (t.nominal - t.deviation) / s.cost_cap;
  s.slope_best = de * (t.nominal + t.deviation) / s.cost_cap;
  return s;
}

double salesforce_optimal_slope(const SalesforceParams& p) {
  check_salesforce(p);
  SalesforceTerms t = salesforce_terms(p);
  double denom = (p.effort_high - p.effort_low) * (t.nominal - t.deviation);
  if (denom <= 0.0) throw std::runtime_error("worst-case expected output nonpositive");
  return (p.cost_high - p.cost_low) / denom;
}

Scenario salesforce_pair_scenario(double dominated_slope, double dominated_cost_cap,
                                  double dominating_slope, double dominating_cost_cap) {
  if (dominated_slope <= 0.0 || dominating_slope <= 0.0 || dominated_cost_cap <= 0.0 ||
      dominating_cost_cap <= 0.0)
    throw std::invalid_argument("salesforce pair: slopes and cost caps must be positive");

  const double eps = 1e-12;
  double dominated_level = dominated_slope * dominated_cost_cap;
  double dominating_level = dominating_slope * dominating_cost_cap;
  if (dominating_slope < dominated_slope - eps || dominating_level < dominated_level - eps) {
    std::ostringstream os;
    os << "production curves cross: slopes " << dominated_slope << " vs " << dominating_slope
       << ", endpoint levels " << dominated_level << " vs " << dominating_level
       << "; the domination premise is violated";
    throw std::runtime_error(os.str());
  }

  auto two_point = [](std::string id, double slope, double cbar) {
    Technology tech;
    tech.type_id = std::move(id);
    tech.actions.push_back({0.0, OutputSpec::deterministic(0.0)});
    tech.actions.push_back({cbar, OutputSpec::deterministic(slope * cbar)});
    return tech;
  };

  Scenario s;
  s.technologies.push_back(two_point("worst_case", dominated_slope, dominated_cost_cap));
  s.technologies.push_back(two_point("best_case", dominating_slope, dominating_cost_cap));
  s.ambiguity = AmbiguitySet::all_deltas({"worst_case", "best_case"});
  s.family = ContractFamilySpec::affine();
  return s;
}

Scenario salesforce_scenario(const SalesforceParams& p) {
  SalesforceSlopes s = salesforce_slopes(p);
  if (s.slope_worst * s.cost_cap <= s.cost_cap)
    throw std::runtime_error("worst-case type has no positive surplus (Assumption 5)");
  return salesforce_pair_scenario(s.slope_worst, s.cost_cap, s.slope_best, s.cost_cap);
}

}  // namespace drpa
