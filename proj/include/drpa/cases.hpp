#pragma once

#include <string>
#include <vector>

#include "drpa/model.hpp"

namespace drpa {

// Forest conservation: quadratic opportunity cost, utility k per conserved
// unit, nominal conservation type t on total area a0. Production function
// g(c) = k (sqrt(2c/h) + t a0).
struct ForestParams {
  double k = 1.0;
  double h = 1.0;
  double t = 0.0;
  double a0 = 0.0;
};

// Samples the forest production function on [0, cbar] with cbar at the cost
// where g' = 1 (surplus declines beyond it).
ProductionCurve forest_curve(const ForestParams& params, int steps = 201);

double forest_cost_cap(const ForestParams& params);

// Closed-form principal payoff under the linear contract with slope p.
double forest_linear_payoff(const ForestParams& params, double p);

struct ForestRatio {
  double payoff_at_half = 0.0;
  double surplus_upper_bound = 0.0;
  double ratio = 0.0;
};

ForestRatio forest_ratio_bound(const ForestParams& params);

// Salesforce incentivization: two effort levels, output support y_0..y_n,
// nominal weight abar, deviations delta_i, q-norm uncertainty (q > 1).
struct SalesforceParams {
  double cost_low = 0.0;
  double cost_high = 1.0;
  double effort_low = 0.0;
  double effort_high = 1.0;
  double y0 = 0.0;
  std::vector<double> outputs;  // y_1..y_n
  double abar = 1.0;
  std::vector<double> deltas;   // delta_1..delta_n
  double q = 2.0;
};

// Slope of the optimal contract payment coefficient; equals cbar/g(cbar) on
// the induced worst-case two-point curve. Errors when the worst-case expected
// output increment is nonpositive.
double salesforce_optimal_slope(const SalesforceParams& params);

struct SalesforceSlopes {
  double slope_worst = 0.0;  // worst-case (dominated) linear production slope
  double slope_best = 0.0;   // best-case (dominating) slope
  double cost_cap = 0.0;     // c(e_h) - c(e_l)
};

SalesforceSlopes salesforce_slopes(const SalesforceParams& params);

// Two-type scenario with linear two-point production, the worst-case type
// dominated by the best-case type. Certification must find the dominated
// type as the bottleneck.
Scenario salesforce_scenario(const SalesforceParams& params);

// Core builder for the dominated/dominating pair; rejects crossing
// (non-dominating) curves by comparing slopes and endpoint levels.
Scenario salesforce_pair_scenario(double dominated_slope, double dominated_cost_cap,
                                  double dominating_slope, double dominating_cost_cap);

}  // namespace drpa
