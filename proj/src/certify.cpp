#include "drpa/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "drpa/agent.hpp"
#include "drpa/geometry.hpp"

namespace drpa {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<double> slopes_of(const ProductionCurve& curve) {
  const auto& s = curve.samples;
  std::vector<double> d;
  d.reserve(s.size() > 0 ? s.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    d.push_back((s[i + 1].output - s[i].output) / (s[i + 1].cost - s[i].cost));
  return d;
}

}  // namespace

std::string surplus_shape_name(SurplusShape s) {
  switch (s) {
    case SurplusShape::Convex: return "convex";
    case SurplusShape::Concave: return "concave";
    case SurplusShape::Neither: return "neither";
  }
  return "unknown";
}

SurplusClass classify_surplus(const ProductionCurve& curve, double eps) {
  SurplusClass out;
  const auto& s = curve.samples;
  if (s.size() < 2) {
    out.convex_violations.push_back(0);
    out.concave_violations.push_back(0);
    return out;
  }

  bool origin_ok = std::abs(s.front().cost) <= eps && std::abs(s.front().output) <= eps;
  if (!origin_ok) {
    out.convex_violations.push_back(0);
    out.concave_violations.push_back(0);
  }

  auto d = slopes_of(curve);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1.0 - eps) {
      out.convex_violations.push_back(i + 1);
      out.concave_violations.push_back(i + 1);
    }
  }
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i + 1] < d[i] - eps) out.convex_violations.push_back(i + 2);
    if (d[i + 1] > d[i] + eps) out.concave_violations.push_back(i + 2);
  }

  if (out.convex_violations.empty())
    out.classification = SurplusShape::Convex;
  else if (out.concave_violations.empty())
    out.classification = SurplusShape::Concave;
  else
    out.classification = SurplusShape::Neither;
  return out;
}

std::optional<std::string> bottleneck_type(const std::map<std::string, ProductionCurve>& curves,
                                           double eps) {
  if (curves.empty()) throw std::invalid_argument("bottleneck_type: no curves");
  double min_ratio = std::numeric_limits<double>::infinity();
  double min_level = std::numeric_limits<double>::infinity();
  for (const auto& [id, curve] : curves) {
    if (curve.cost_cap <= 0.0)
      throw std::invalid_argument("bottleneck_type: type '" + id + "' has zero cost cap");
    double level = curve.endpoint_output();
    double ratio = level / curve.cost_cap;
    min_ratio = std::min(min_ratio, ratio);
    min_level = std::min(min_level, level);
  }
  for (const auto& [id, curve] : curves) {
    double level = curve.endpoint_output();
    double ratio = level / curve.cost_cap;
    if (ratio <= min_ratio + eps && level <= min_level + eps) return id;
  }
  return std::nullopt;
}

Certificate certify_affine_optimal(const Scenario& scenario) {
  Certificate cert;

  if (scenario.family.variant != FamilyVariant::Affine &&
      scenario.family.variant != FamilyVariant::Linear) {
    cert.reason = "condition out of scope: family must be affine or linear";
    return cert;
  }
  if (scenario.ambiguity.variant != AmbiguityVariant::AllDeltas &&
      scenario.ambiguity.variant != AmbiguityVariant::FullSimplex) {
    cert.reason = "condition out of scope: ambiguity must be all-deltas or the full simplex";
    return cert;
  }
  auto violations = validate_scenario(scenario);
  if (!violations.empty()) {
    cert.reason = "scenario invalid: " + violations.front().assumption + " (" +
                  violations.front().message + ")";
    return cert;
  }

  std::map<std::string, ProductionCurve> curves;
  bool all_convex = true;
  std::string nonconvex;
  for (const auto& tech : scenario.technologies) {
    ProductionCurve curve = production_curve_at_action_costs(tech, scenario.grid.eps_tie);
    auto cls = classify_surplus(curve, scenario.grid.eps_val);
    Certificate::Evidence ev;
    ev.endpoint_output = curve.endpoint_output();
    ev.ratio = curve.cost_cap > 0.0 ? ev.endpoint_output / curve.cost_cap : 0.0;
    ev.shape = cls.classification;
    cert.evidence[tech.type_id] = ev;
    if (cls.classification != SurplusShape::Convex) {
      all_convex = false;
      if (nonconvex.empty()) nonconvex = tech.type_id;
    }
    curves.emplace(tech.type_id, std::move(curve));
  }

  cert.bottleneck = bottleneck_type(curves, scenario.grid.eps_val);

  // Measure the gap regardless of the outcome; sufficiency means a missing
  // condition does not preclude a zero gap.
  SolveResult gi = solve_game_i(scenario);
  SolveResult giii = solve_game_iii(scenario);
  cert.z_i = gi.value;
  cert.z_iii = giii.value;
  cert.measured_gap = giii.value - gi.value;

  if (!all_convex) {
    cert.reason = "type '" + nonconvex + "' does not classify convex";
    return cert;
  }
  if (!cert.bottleneck) {
    cert.reason = "no type is simultaneously least efficient and least productive";
    return cert;
  }
  if (*cert.measured_gap > kCertifyGapTolerance) {
    cert.reason = "cross-check failed: z_III - z_I = " + fmt(*cert.measured_gap);
    return cert;
  }
  cert.certified = true;
  cert.reason = "all types convex, bottleneck '" + *cert.bottleneck +
                "', measured gap " + fmt(*cert.measured_gap);
  return cert;
}

ConvexClosedForms convex_closed_forms(const ProductionCurve& curve, double eps) {
  auto cls = classify_surplus(curve, eps);
  if (cls.classification != SurplusShape::Convex)
    throw std::invalid_argument("convex_closed_forms: curve does not classify convex");
  double g = curve.endpoint_output();
  if (curve.cost_cap <= 0.0 || g <= 0.0)
    throw std::invalid_argument("convex_closed_forms: degenerate curve");
  return {curve.cost_cap / g, g - curve.cost_cap};
}

AdjustabilityRatio adjustability_ratio_concave(const ProductionCurve& curve, double eps) {
  const auto& s = curve.samples;
  if (s.size() < 3)
    throw std::invalid_argument("adjustability_ratio_concave: need at least 3 samples");

  // The tangency substitution needs a concave surplus; the full concave
  // classification (slopes >= 1) is sufficient but not necessary, so accept
  // any nonincreasing slope sequence (e.g. a concave envelope).
  auto d = slopes_of(curve);
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i + 1] > d[i] + eps)
      throw std::invalid_argument("adjustability_ratio_concave: surplus is not concave");

  AdjustabilityRatio out;
  double num = -std::numeric_limits<double>::infinity();
  double den = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    double gp = derivative(curve, s[i].cost);
    if (gp > eps) num = std::max(num, s[i].output - s[i].output / gp);
    den = std::max(den, s[i].output - s[i].cost);
  }
  if (den <= eps) throw std::runtime_error("no positive surplus (Assumption 5)");
  out.numerator = num;
  out.denominator = den;
  out.ratio = num / den;
  // Surplus still rising at the cap: the unconstrained maximizer lies beyond
  // cbar and the ratio is a lower bound.
  out.lower_bound = d.back() > 1.0 + eps;
  return out;
}

double affine_payoff_concave(const ProductionCurve& curve, double theta0, double theta1) {
  if (theta1 <= 0.0 || theta1 > 1.0 + 1e-12)
    throw std::invalid_argument("affine_payoff_concave: theta1 must be in (0, 1]");
  InverseDerivative inv = inverse_derivative(curve, 1.0 / theta1);
  // Locate the grid output at the resolved cost.
  double g = 0.0;
  double dist = std::numeric_limits<double>::infinity();
  for (const auto& p : curve.samples) {
    double d = std::abs(p.cost - inv.cost);
    if (d < dist) {
      dist = d;
      g = p.output;
    }
  }
  return (1.0 - theta1) * g - theta0;
}

GapReport decompose_gap(const Scenario& scenario) {
  SolveResult gi = solve_game_i(scenario);
  SolveResult gii = solve_game_ii(scenario);
  SolveResult giii = solve_game_iii(scenario);

  const double eps = scenario.grid.eps_val;
  if (gi.value > gii.value + eps || gii.value > giii.value + eps)
    throw std::logic_error("decompose_gap: payoff ordering z_I <= z_II <= z_III violated");

  GapReport report;
  report.z_i = gi.value;
  report.z_ii = gii.value;
  report.z_iii = giii.value;
  report.adjustability_gap = giii.value - gii.value;
  report.information_rent = gii.value - gi.value;
  report.optimality_gap_bound = giii.value - gi.value;
  if (gi.argmax_contract) report.best_contract = *gi.argmax_contract;
  report.warnings = gi.warnings;
  report.warnings.insert(report.warnings.end(), gii.warnings.begin(), gii.warnings.end());
  report.warnings.insert(report.warnings.end(), giii.warnings.begin(), giii.warnings.end());

  for (const auto& tech : scenario.technologies) {
    GapReport::PerType pt;
    pt.first_best = giii.per_type_values.at(tech.type_id);
    pt.game_ii_value = gii.per_type_values.at(tech.type_id);
    auto it = gii.per_type_contracts.find(tech.type_id);
    if (it != gii.per_type_contracts.end()) {
      BestResponse br = best_response(it->second, tech, scenario.grid.eps_tie);
      pt.action_cost = br.action.cost;
      pt.action_expected_output = br.action.expected_output();
    }
    report.per_type[tech.type_id] = pt;

    // Closed-form diagnostics; solver values stay the source of truth.
    ProductionCurve curve = production_curve_at_action_costs(tech, scenario.grid.eps_tie);
    auto cls = classify_surplus(curve, eps);
    bool affine_like = scenario.family.variant == FamilyVariant::Affine ||
                       scenario.family.variant == FamilyVariant::Linear;
    if (!affine_like) continue;
    if (cls.classification == SurplusShape::Convex) {
      auto cf = convex_closed_forms(curve, eps);
      if (std::abs(cf.game_ii_value - pt.game_ii_value) >
          1e-6 * std::max(1.0, std::abs(cf.game_ii_value)))
        report.warnings.push_back("type '" + tech.type_id +
                                  "': convex closed form disagrees with the grid solver (" +
                                  fmt(cf.game_ii_value) + " vs " + fmt(pt.game_ii_value) + ")");
    } else {
      SurplusCurve env = concave_envelope(SurplusCurve::from_production(curve));
      ProductionCurve env_curve;
      env_curve.cost_cap = curve.cost_cap;
      for (const auto& p : env.points) env_curve.samples.push_back({p.cost, p.surplus + p.cost});
      try {
        auto ratio = adjustability_ratio_concave(env_curve, eps);
        std::string label = cls.classification == SurplusShape::Concave
                                ? "concave closed form"
                                : "concave-envelope bound";
        report.warnings.push_back("note: type '" + tech.type_id + "': " + label +
                                  " adjustability ratio " + fmt(ratio.ratio) +
                                  (ratio.lower_bound ? " (lower bound)" : ""));
      } catch (const std::exception&) {
        // Degenerate envelope (no positive surplus); solver values stand alone.
      }
    }
  }

  auto issues = report.verify(eps);
  if (!issues.empty()) throw std::logic_error("decompose_gap: " + issues.front());
  return report;
}

std::map<std::string, QuasiconcavityReport> quasiconcavity_scan(const Scenario& scenario) {
  if (scenario.family.variant != FamilyVariant::Affine &&
      scenario.family.variant != FamilyVariant::Linear)
    throw std::invalid_argument("quasiconcavity_scan: family must be affine or linear");

  std::map<std::string, QuasiconcavityReport> reports;
  const double eps = scenario.grid.eps_val;

  for (const auto& tech : scenario.technologies) {
    QuasiconcavityReport rep;

    // Sample at the agent's active indifference breakpoints (reciprocal
    // upper-hull slopes); favorable tie-breaking puts the sampled payoff on
    // its upper semicontinuous envelope, free of discretization teeth.
    SurplusCurve pts;
    pts.cost_cap = tech.cost_cap();
    for (const auto& a : tech.actions)
      pts.points.push_back({a.cost, a.expected_output() - a.cost});
    auto hull = upper_hull_points(pts);

    std::vector<double> t1s{0.0, 1.0};
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      double dc = hull[i + 1].cost - hull[i].cost;
      double dy = (hull[i + 1].surplus + hull[i + 1].cost) - (hull[i].surplus + hull[i].cost);
      if (dy <= 1e-15) continue;
      double t = dc / dy;
      if (t > 0.0 && t < 1.0) t1s.push_back(t);
    }
    std::sort(t1s.begin(), t1s.end());
    t1s.erase(std::unique(t1s.begin(), t1s.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-15; }),
              t1s.end());

    std::vector<double> payoff(t1s.size());
    double max_payoff = 0.0;
    for (std::size_t i = 0; i < t1s.size(); ++i) {
      BestResponse br = best_response(Contract::linear(t1s[i]), tech, scenario.grid.eps_tie);
      payoff[i] = br.principal_payoff;
      max_payoff = std::max(max_payoff, payoff[i]);
    }
    rep.theta1_samples = t1s;
    rep.payoffs = payoff;

    const double tol = eps * std::max(1.0, max_payoff);

    // 1-D upper level sets are intervals: no sample sits below both a higher
    // left and a higher right neighbor region.
    rep.unimodal = true;
    std::vector<double> prefix(payoff.size()), suffix(payoff.size());
    double run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < payoff.size(); ++i) prefix[i] = run = std::max(run, payoff[i]);
    run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = payoff.size(); i-- > 0;) suffix[i] = run = std::max(run, payoff[i]);
    for (std::size_t i = 1; i + 1 < payoff.size(); ++i) {
      double valley = std::min(prefix[i - 1], suffix[i + 1]) - payoff[i];
      if (valley > tol) {
        rep.unimodal = false;
        rep.max_violation = std::max(rep.max_violation, valley);
      }
    }

    // Level sets over the joint (theta0, theta1) parameter box are convex iff
    // the theta0 = 0 payoff is concave where it is positive.
    SurplusCurve support;
    support.cost_cap = 1.0;
    for (std::size_t i = 0; i < t1s.size(); ++i)
      if (payoff[i] > tol) support.points.push_back({t1s[i], payoff[i]});
    rep.concave_on_support = true;
    if (support.points.size() >= 3) {
      SurplusCurve env = concave_envelope(support);
      for (std::size_t i = 0; i < support.points.size(); ++i) {
        double below = env.points[i].surplus - support.points[i].surplus;
        if (below > tol) {
          rep.concave_on_support = false;
          rep.max_violation = std::max(rep.max_violation, below);
        }
      }
    }

    rep.quasi_concave = rep.unimodal && rep.concave_on_support;
    reports[tech.type_id] = rep;
  }
  return reports;
}

}  // namespace drpa
