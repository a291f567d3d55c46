#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drpa/agent.hpp"
#include "drpa/model.hpp"

namespace drpa {

struct WorstExpectation {
  double value = 0.0;
  TypeDistribution distribution;
};

// The worst-expectation operator min_{G} E_{t~G}[v_t]. All-deltas and the
// full simplex reduce to the vertex minimum; finite sets are enumerated; ties
// go to the first listed type or member.
WorstExpectation worst_expectation(const AmbiguitySet& ambiguity,
                                   const std::map<std::string, double>& per_type_values);

struct SolveResult {
  double value = 0.0;
  std::optional<Contract> argmax_contract;  // absent for Game III
  std::map<std::string, double> per_type_values;
  TypeDistribution worst_distribution;
  // Game II: the per-type optimal contracts.
  std::map<std::string, Contract> per_type_contracts;
  std::vector<std::string> warnings;
};

// First-best surplus: max over actions of expected output minus cost.
double first_best(const Technology& tech);

// Game I: max over family contracts of the worst-expectation payoff, each
// type best-responding. Restrictive families are grid-searched over theta;
// the general family is an exhaustive schedule search at desk scale only.
SolveResult solve_game_i(const Scenario& scenario);

// Game II: type revealed before contracting. Per-type optimum, aggregated
// with the worst-expectation operator.
SolveResult solve_game_ii(const Scenario& scenario);

// Game II value under the general family: the first-best, achieved by the
// schedule that reimburses, at each output, the minimal cost producing it.
// The constructed schedule's incentive compatibility is verified via
// best_response.
double game_ii_general(const Technology& tech, double eps_tie = 1e-9);

// Game III: per-type first-best aggregated with the worst-expectation
// operator; independent of the (surjective) family.
SolveResult solve_game_iii(const Scenario& scenario);

struct MinimaxResult {
  double maximin = 0.0;
  double minimax = 0.0;
  double gap = 0.0;
};

// Maximin (Game I) against its minimax counterpart min_t max_theta. Requires
// an affine or linear family and an all-deltas or full-simplex ambiguity.
MinimaxResult minimax_counterpart(const Scenario& scenario);

// Candidate theta1 values for the grid search: the uniform base grid plus
// every agent-indifference breakpoint (reciprocal slopes of each type's upper
// hull of (cost, expected output) points). For finite action sets the
// breakpoints make the affine/linear search exact.
std::vector<double> theta1_candidates(const Scenario& scenario);

std::vector<double> theta0_grid(const Scenario& scenario);

}  // namespace drpa
