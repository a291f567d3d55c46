#include "drpa/agent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drpa {

double expected_wage(const Contract& contract, const Action& action) {
  if (action.output.is_deterministic())
    return contract.payment(action.output.atoms.front().output);
  double w = 0.0;
  for (const auto& atom : action.output.atoms)
    w += atom.probability * contract.payment(atom.output);
  return w;
}

BestResponse best_response(const Contract& contract, const Technology& tech,
                           double eps_tie) {
  if (tech.actions.empty()) throw std::runtime_error("no actions");

  // Pass 1: the agent's optimum.
  std::vector<double> agent(tech.actions.size());
  std::vector<double> principal(tech.actions.size());
  double best_agent = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tech.actions.size(); ++i) {
    const Action& a = tech.actions[i];
    double wage = expected_wage(contract, a);
    agent[i] = wage - a.cost;
    principal[i] = a.expected_output() - wage;
    best_agent = std::max(best_agent, agent[i]);
  }

  // Pass 2: favorable tie-breaking among near-indifferent actions.
  std::size_t pick = tech.actions.size();
  for (std::size_t i = 0; i < tech.actions.size(); ++i) {
    if (agent[i] < best_agent - eps_tie) continue;
    if (pick == tech.actions.size()) {
      pick = i;
      continue;
    }
    if (principal[i] > principal[pick] + eps_tie) {
      pick = i;
    } else if (std::abs(principal[i] - principal[pick]) <= eps_tie &&
               tech.actions[i].cost < tech.actions[pick].cost - eps_tie) {
      pick = i;
    }
  }

  BestResponse r;
  r.action = tech.actions[pick];
  r.action_index = pick;
  r.agent_payoff = agent[pick];
  r.principal_payoff = principal[pick];
  return r;
}

SurplusCurve::Point extremal_response_affine(const ProductionCurve& curve, double theta0,
                                             double theta1, double eps_tie) {
  (void)theta0;  // shifts both payoffs, never the argmax
  if (theta1 < -1e-12 || theta1 > 1.0 + 1e-12)
    throw std::invalid_argument("extremal_response_affine: theta1 outside [0, 1]");
  SurplusCurve s = SurplusCurve::from_production(curve);
  return extremal_point(s, theta1 - 1.0, theta1, eps_tie);
}

}  // namespace drpa
