#pragma once

#include <vector>

#include "drpa/model.hpp"

namespace drpa {

// Social surplus g(c) - c sampled on the production grid.
struct SurplusCurve {
  struct Point {
    double cost = 0.0;
    double surplus = 0.0;
  };
  std::vector<Point> points;
  double cost_cap = 0.0;

  static SurplusCurve from_production(const ProductionCurve& curve);
};

// Argmax of <direction, (cost, surplus)> over the sampled points. Ties are
// broken toward the larger principal payoff (larger cost + surplus), then the
// lower cost, then input order.
SurplusCurve::Point extremal_point(const SurplusCurve& curve, double dir_cost,
                                   double dir_surplus, double eps_tie = 1e-9);

// Upper concave envelope of the sampled surplus, evaluated back on the
// original cost grid.
SurplusCurve concave_envelope(const SurplusCurve& curve);

// Vertices of the upper concave hull of the sampled surplus, left to right.
std::vector<SurplusCurve::Point> upper_hull_points(const SurplusCurve& curve);

// Finite-difference derivative of the production function at the grid point
// nearest c (central in the interior, one-sided at the endpoints).
double derivative(const ProductionCurve& curve, double c);

struct InverseDerivative {
  double cost = 0.0;
  bool clamped = false;  // v fell outside the sampled range of g'
};

// Grid cost where the finite-difference derivative is closest to v. Requires
// g' monotone with nonzero spread on the grid; out-of-range v clamps to the
// nearer endpoint and reports it.
InverseDerivative inverse_derivative(const ProductionCurve& curve, double v);

}  // namespace drpa
