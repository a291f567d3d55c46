#include "drpa/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "drpa/geometry.hpp"

namespace drpa {

namespace {

constexpr double kStrict = 1e-15;

TypeDistribution delta_of(const std::string& id) { return TypeDistribution::delta(id); }

double expectation(const TypeDistribution& dist,
                   const std::map<std::string, double>& values) {
  double e = 0.0;
  for (const auto& [id, w] : dist.weights) {
    auto it = values.find(id);
    if (it == values.end())
      throw std::invalid_argument("worst_expectation: missing value for type '" + id + "'");
    e += w * it->second;
  }
  return e;
}

}  // namespace

WorstExpectation worst_expectation(const AmbiguitySet& ambiguity,
                                   const std::map<std::string, double>& per_type_values) {
  WorstExpectation out;
  switch (ambiguity.variant) {
    case AmbiguityVariant::Singleton: {
      if (ambiguity.members.size() != 1)
        throw std::invalid_argument("singleton ambiguity needs exactly one member");
      out.distribution = ambiguity.members.front();
      out.value = expectation(out.distribution, per_type_values);
      return out;
    }
    case AmbiguityVariant::AllDeltas:
    case AmbiguityVariant::FullSimplex: {
      // A linear objective over the simplex attains its minimum at a vertex.
      if (ambiguity.type_ids.empty())
        throw std::invalid_argument("delta/simplex ambiguity needs a type ground set");
      const std::string* pick = nullptr;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& id : ambiguity.type_ids) {
        auto it = per_type_values.find(id);
        if (it == per_type_values.end())
          throw std::invalid_argument("worst_expectation: missing value for type '" + id + "'");
        if (it->second < best - kStrict) {
          best = it->second;
          pick = &id;
        }
      }
      out.value = best;
      out.distribution = delta_of(*pick);
      return out;
    }
    case AmbiguityVariant::FiniteSet: {
      if (ambiguity.members.empty())
        throw std::invalid_argument("finite-set ambiguity needs members");
      const TypeDistribution* pick = nullptr;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& m : ambiguity.members) {
        double e = expectation(m, per_type_values);
        if (e < best - kStrict) {
          best = e;
          pick = &m;
        }
      }
      out.value = best;
      out.distribution = *pick;
      return out;
    }
  }
  throw std::logic_error("worst_expectation: unknown ambiguity variant");
}

double first_best(const Technology& tech) {
  if (tech.actions.empty()) throw std::runtime_error("no actions");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : tech.actions)
    best = std::max(best, a.expected_output() - a.cost);
  return best;
}

std::vector<double> theta1_candidates(const Scenario& scenario) {
  std::vector<double> cands = uniform_grid(0.0, 1.0, scenario.grid.theta1_steps);

  // Agent-indifference breakpoints: for each type, reciprocal slopes of the
  // upper hull of (cost, expected output). The agent's argmax only changes
  // there, and the per-type payoff declines between breakpoints, so the grid
  // search is exact for finite action sets.
  for (const auto& tech : scenario.technologies) {
    SurplusCurve pts;
    pts.cost_cap = tech.cost_cap();
    for (const auto& a : tech.actions)
      pts.points.push_back({a.cost, a.expected_output() - a.cost});
    auto hull = upper_hull_points(pts);
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      double dc = hull[i + 1].cost - hull[i].cost;
      double dy = (hull[i + 1].surplus + hull[i + 1].cost) -
                  (hull[i].surplus + hull[i].cost);
      if (dy <= kStrict) continue;
      double t = dc / dy;
      if (t > 0.0 && t <= 1.0) cands.push_back(t);
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-15; }),
              cands.end());
  return cands;
}

std::vector<double> theta0_grid(const Scenario& scenario) {
  double cap = scenario.family.theta0_max;
  if (cap < 0.0) cap = scenario.grid.theta0_max;
  if (cap < 0.0) cap = max_expected_output(scenario);
  if (cap <= 0.0) return {0.0};
  return uniform_grid(0.0, cap, scenario.grid.theta0_steps);
}

namespace {

Contract make_restrictive(FamilyVariant family, double theta0, double theta1) {
  switch (family) {
    case FamilyVariant::Affine: return Contract::affine(theta0, theta1);
    case FamilyVariant::Linear: return Contract::linear(theta1);
    case FamilyVariant::Constant: return Contract::constant(theta0);
    default: throw std::logic_error("make_restrictive: general family");
  }
}

struct Candidate {
  Contract contract;
  std::map<std::string, double> per_type;
  WorstExpectation worst;
};

// Evaluates a contract against every technology and aggregates.
Candidate evaluate_contract(const Scenario& s, const Contract& c) {
  Candidate cand;
  cand.contract = c;
  for (const auto& tech : s.technologies) {
    BestResponse br = best_response(c, tech, s.grid.eps_tie);
    cand.per_type[tech.type_id] = br.principal_payoff;
  }
  cand.worst = worst_expectation(s.ambiguity, cand.per_type);
  return cand;
}

// Exhaustive schedule search for the general family (desk scale).
void general_schedule_search(const Scenario& s, SolveResult& result) {
  const auto& fam = s.family;
  std::vector<double> outputs = fam.output_grid;
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                outputs.end());
  if (static_cast<int>(outputs.size()) > s.grid.general_max_outputs)
    throw std::runtime_error("general-family Game I intractable at this size");

  const int levels = std::max(fam.payment_steps, 2);
  double count = std::pow(static_cast<double>(levels), static_cast<double>(outputs.size()));
  if (count > 2.0e7)
    throw std::runtime_error("general-family Game I intractable at this size");

  std::vector<double> axis = uniform_grid(0.0, std::max(fam.payment_cap, 0.0), levels);

  auto consider = [&](const Contract& c) {
    Candidate cand = evaluate_contract(s, c);
    if (cand.worst.value > result.value + kStrict) {
      result.value = cand.worst.value;
      result.argmax_contract = cand.contract;
      result.per_type_values = cand.per_type;
      result.worst_distribution = cand.worst.distribution;
    }
  };

  std::vector<std::size_t> idx(outputs.size(), 0);
  std::vector<double> pay(outputs.size(), 0.0);
  bool done = outputs.empty();
  while (!done) {
    for (std::size_t i = 0; i < idx.size(); ++i) pay[i] = axis[idx[i]];
    consider(Contract::general(outputs, pay, s.grid.eps_tie));
    std::size_t i = 0;
    while (i < idx.size()) {
      if (++idx[i] < axis.size()) break;
      idx[i] = 0;
      ++i;
    }
    done = (i == idx.size());
  }

  // The affine-family optimum, quantized onto the schedule grid, is a valid
  // general-family candidate; injecting it keeps the desk-scale search a
  // tighter lower bound than any restrictive family it brackets.
  Scenario affine_variant = s;
  affine_variant.family = ContractFamilySpec::affine();
  SolveResult affine = solve_game_i(affine_variant);
  if (affine.argmax_contract) {
    std::vector<double> pays(outputs.size());
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      double p = affine.argmax_contract->payment(outputs[i]);
      pays[i] = std::clamp(p, 0.0, std::max(fam.payment_cap, 0.0));
    }
    consider(Contract::general(outputs, pays, s.grid.eps_tie));
  }
}

}  // namespace

SolveResult solve_game_i(const Scenario& s) {
  SolveResult result;
  result.value = -std::numeric_limits<double>::infinity();

  if (s.family.variant == FamilyVariant::General) {
    general_schedule_search(s, result);
    return result;
  }

  const bool has_theta1 =
      s.family.variant == FamilyVariant::Affine || s.family.variant == FamilyVariant::Linear;
  const bool has_theta0 =
      s.family.variant == FamilyVariant::Affine || s.family.variant == FamilyVariant::Constant;

  std::vector<double> t1s = has_theta1 ? theta1_candidates(s) : std::vector<double>{0.0};
  std::vector<double> t0s = has_theta0 ? theta0_grid(s) : std::vector<double>{0.0};

  for (double t1 : t1s) {
    // The agent's response is independent of theta0, so evaluate it once.
    Candidate base = evaluate_contract(s, make_restrictive(s.family.variant, 0.0, t1));
    for (double t0 : t0s) {
      double v = base.worst.value - t0;
      if (v > result.value + kStrict) {
        result.value = v;
        result.argmax_contract = make_restrictive(s.family.variant, t0, t1);
        result.per_type_values = base.per_type;
        for (auto& [id, pv] : result.per_type_values) pv -= t0;
        result.worst_distribution = base.worst.distribution;
      }
    }
  }
  return result;
}

namespace {

std::pair<double, Contract> game_ii_general_impl(const Technology& tech, double eps_tie) {
  // Claim-4 semantics: the general-family Game II value is the first best.
  // The reimbursement schedule is built on the mean-reduced technology (the
  // hidden-action reduction), where the construction is exact.
  Technology det = mean_reduced(tech);
  double fb = first_best(det);

  std::vector<double> outputs;
  std::vector<double> pays;
  for (const auto& a : det.actions) {
    double y = a.expected_output();
    bool found = false;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (std::abs(outputs[i] - y) <= eps_tie) {
        pays[i] = std::min(pays[i], a.cost);  // minimal cost that maps to y
        found = true;
        break;
      }
    }
    if (!found) {
      outputs.push_back(y);
      pays.push_back(a.cost);
    }
  }
  Contract schedule = Contract::general(outputs, pays, eps_tie);

  BestResponse br = best_response(schedule, det, eps_tie);
  if (std::abs(br.principal_payoff - fb) > 1e-6 * std::max(1.0, std::abs(fb)))
    throw std::logic_error("game_ii_general: reimbursement schedule failed the IC check");
  return {fb, schedule};
}

}  // namespace

double game_ii_general(const Technology& tech, double eps_tie) {
  return game_ii_general_impl(tech, eps_tie).first;
}

SolveResult solve_game_ii(const Scenario& s) {
  SolveResult result;

  const bool has_theta1 =
      s.family.variant == FamilyVariant::Affine || s.family.variant == FamilyVariant::Linear;
  const bool has_theta0 =
      s.family.variant == FamilyVariant::Affine || s.family.variant == FamilyVariant::Constant;

  std::vector<double> t1s = has_theta1 ? theta1_candidates(s) : std::vector<double>{0.0};
  std::vector<double> t0s = has_theta0 ? theta0_grid(s) : std::vector<double>{0.0};

  for (const auto& tech : s.technologies) {
    double best = -std::numeric_limits<double>::infinity();
    Contract best_contract;
    if (s.family.variant == FamilyVariant::General) {
      auto [v, c] = game_ii_general_impl(tech, s.grid.eps_tie);
      best = v;
      best_contract = c;
    } else {
      for (double t1 : t1s) {
        BestResponse br =
            best_response(make_restrictive(s.family.variant, 0.0, t1), tech, s.grid.eps_tie);
        for (double t0 : t0s) {
          double v = br.principal_payoff - t0;
          if (v > best + kStrict) {
            best = v;
            best_contract = make_restrictive(s.family.variant, t0, t1);
          }
        }
      }
    }
    result.per_type_values[tech.type_id] = best;
    result.per_type_contracts[tech.type_id] = best_contract;
  }

  WorstExpectation worst = worst_expectation(s.ambiguity, result.per_type_values);
  result.value = worst.value;
  result.worst_distribution = worst.distribution;
  if (s.ambiguity.variant == AmbiguityVariant::AllDeltas ||
      s.ambiguity.variant == AmbiguityVariant::FullSimplex) {
    const auto& worst_type = worst.distribution.weights.front().first;
    result.argmax_contract = result.per_type_contracts.at(worst_type);
  }
  return result;
}

SolveResult solve_game_iii(const Scenario& s) {
  SolveResult result;
  if (s.family.variant == FamilyVariant::Linear)
    result.warnings.push_back(
        "linear family is not surjective in general; Game III value computed as the "
        "first best of the surjective closure");
  for (const auto& tech : s.technologies)
    result.per_type_values[tech.type_id] = first_best(tech);
  WorstExpectation worst = worst_expectation(s.ambiguity, result.per_type_values);
  result.value = worst.value;
  result.worst_distribution = worst.distribution;
  return result;
}

MinimaxResult minimax_counterpart(const Scenario& s) {
  if (s.family.variant != FamilyVariant::Affine && s.family.variant != FamilyVariant::Linear)
    throw std::invalid_argument("minimax_counterpart: family must be affine or linear");
  if (s.ambiguity.variant != AmbiguityVariant::AllDeltas &&
      s.ambiguity.variant != AmbiguityVariant::FullSimplex)
    throw std::invalid_argument(
        "minimax_counterpart: unsupported ambiguity variant (needs all-deltas or full simplex)");

  MinimaxResult r;
  r.maximin = solve_game_i(s).value;

  SolveResult per_type = solve_game_ii(s);
  double mm = std::numeric_limits<double>::infinity();
  for (const auto& id : s.ambiguity.type_ids)
    mm = std::min(mm, per_type.per_type_values.at(id));
  r.minimax = mm;
  r.gap = r.minimax - r.maximin;
  return r;
}

}  // namespace drpa
