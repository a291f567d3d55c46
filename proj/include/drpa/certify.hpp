#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drpa/model.hpp"
#include "drpa/solvers.hpp"

namespace drpa {

enum class SurplusShape { Convex, Concave, Neither };

std::string surplus_shape_name(SurplusShape s);

// Classification of a production curve against the convex / concave surplus
// definitions: slopes at least 1, monotone slope sequence, g(0) = 0.
struct SurplusClass {
  SurplusShape classification = SurplusShape::Neither;
  std::vector<std::size_t> convex_violations;
  std::vector<std::size_t> concave_violations;
};

SurplusClass classify_surplus(const ProductionCurve& curve, double eps = 1e-9);

// The type simultaneously least efficient (min g(cbar)/cbar) and least
// productive (min g(cbar)), if one exists within eps.
std::optional<std::string> bottleneck_type(const std::map<std::string, ProductionCurve>& curves,
                                           double eps = 1e-6);

// Outcome of the affine/linear optimality check: classification of every
// type, bottleneck existence, and the solver cross-check z_III - z_I.
struct Certificate {
  bool certified = false;
  std::optional<std::string> bottleneck;
  std::string reason;

  struct Evidence {
    double endpoint_output = 0.0;  // g_t(cbar_t)
    double ratio = 0.0;            // g_t(cbar_t) / cbar_t
    SurplusShape shape = SurplusShape::Neither;
  };
  std::map<std::string, Evidence> evidence;

  std::optional<double> z_i;
  std::optional<double> z_iii;
  std::optional<double> measured_gap;
};

// Tolerance for the certified z_III - z_I cross-check.
inline constexpr double kCertifyGapTolerance = 1e-4;

Certificate certify_affine_optimal(const Scenario& scenario);

struct ConvexClosedForms {
  double theta1_star = 0.0;   // cbar / g(cbar)
  double game_ii_value = 0.0; // g(cbar) - cbar
};

// Closed forms for convex surplus. Errors on curves that do not classify
// Convex.
ConvexClosedForms convex_closed_forms(const ProductionCurve& curve, double eps = 1e-9);

struct AdjustabilityRatio {
  double ratio = 0.0;
  double numerator = 0.0;    // max_c g - g/g'
  double denominator = 0.0;  // max_c g - c
  bool lower_bound = false;  // cost cap truncates the surplus maximizer
};

// Adjustability ratio of the affine family for concave surplus, both maxima
// by grid scan. Requires nonincreasing surplus slopes; errors when the curve
// has no positive surplus.
AdjustabilityRatio adjustability_ratio_concave(const ProductionCurve& curve,
                                               double eps = 1e-9);

// Principal payoff (1 - theta1) g((g')^{-1}(1/theta1)) - theta0 for concave
// surplus, resolved on the grid via inverse_derivative.
double affine_payoff_concave(const ProductionCurve& curve, double theta0, double theta1);

// Runs Games I/II/III, fills the report, and asserts the payoff ordering
// z_I <= z_II <= z_III.
GapReport decompose_gap(const Scenario& scenario);

// Diagnostic for the zero-information-rent machinery: per type, is the
// payoff over the affine parameter region quasi-concave? Sampled at the
// agent's active indifference breakpoints; the upper-level-set convexity over
// (theta0, theta1) reduces to unimodality plus concavity of the theta0 = 0
// payoff on its positivity region.
struct QuasiconcavityReport {
  bool quasi_concave = false;
  bool unimodal = false;
  bool concave_on_support = false;
  double max_violation = 0.0;
  std::vector<double> theta1_samples;
  std::vector<double> payoffs;
};

std::map<std::string, QuasiconcavityReport> quasiconcavity_scan(const Scenario& scenario);

}  // namespace drpa
