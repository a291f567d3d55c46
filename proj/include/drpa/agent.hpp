#pragma once

#include "drpa/geometry.hpp"
#include "drpa/model.hpp"

namespace drpa {

// The agent's chosen action under a contract, with both sides' payoffs.
struct BestResponse {
  Action action;
  std::size_t action_index = 0;
  double agent_payoff = 0.0;
  double principal_payoff = 0.0;
};

// E_{y~F}[w(y)] for the action's output distribution.
double expected_wage(const Contract& contract, const Action& action);

// Solves the agent's problem: maximize expected wage minus cost. Among
// actions within eps_tie of the optimum, picks the one maximizing the
// principal's payoff, then the lower cost, then input order.
BestResponse best_response(const Contract& contract, const Technology& tech,
                           double eps_tie = 1e-9);

// Agent's decision under an affine contract read off the surplus epigraph:
// the extremal sampled point in direction (-1 + theta1, theta1). theta0
// shifts payoffs but never the argmax.
SurplusCurve::Point extremal_response_affine(const ProductionCurve& curve, double theta0,
                                             double theta1, double eps_tie = 1e-9);

}  // namespace drpa
