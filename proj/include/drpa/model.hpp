#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drpa {

// One point mass of a finite output distribution.
struct OutputAtom {
  double output = 0.0;
  double probability = 1.0;
};

// Output of a single effort level: a point mass or a finite distribution
// over nonnegative output levels.
struct OutputSpec {
  std::vector<OutputAtom> atoms;

  static OutputSpec deterministic(double y) { return {{{y, 1.0}}}; }
  static OutputSpec distribution(std::vector<OutputAtom> a) { return {std::move(a)}; }

  bool is_deterministic() const { return atoms.size() == 1; }
  double mean() const;
  double probability_sum() const;
};

// An effort level: its cost and the output it yields.
struct Action {
  double cost = 0.0;
  OutputSpec output;

  double expected_output() const { return output.mean(); }
};

// A typed agent's finite action set. A valid technology contains the outside
// option (cost 0, deterministic output 0) and at least one action with
// positive expected surplus.
struct Technology {
  std::string type_id;
  std::vector<Action> actions;

  double cost_cap() const;
  bool has_outside_option(double eps) const;
};

// Sampled production function: at each grid cost, the maximum expected
// output achievable at that cost budget.
struct ProductionCurve {
  struct Sample {
    double cost = 0.0;
    double output = 0.0;
  };
  std::vector<Sample> samples;
  double cost_cap = 0.0;

  double endpoint_output() const { return samples.empty() ? 0.0 : samples.back().output; }
};

enum class FamilyVariant { General, Affine, Linear, Constant };

std::string family_name(FamilyVariant v);

// Parameterized payment-rule family the principal chooses from.
struct ContractFamilySpec {
  FamilyVariant variant = FamilyVariant::Affine;
  // Affine / Constant. Negative means "derive from scenario" (max expected output).
  double theta0_max = -1.0;
  // General family only.
  std::vector<double> output_grid;
  double payment_cap = 0.0;
  int payment_steps = 8;

  static ContractFamilySpec affine(double theta0_max = -1.0);
  static ContractFamilySpec linear();
  static ContractFamilySpec constant(double theta0_max = -1.0);
  static ContractFamilySpec general(std::vector<double> output_grid, double payment_cap,
                                    int payment_steps = 8);
};

// A concrete member of a family: maps realized output to payment.
struct Contract {
  FamilyVariant family = FamilyVariant::Linear;
  double theta0 = 0.0;
  double theta1 = 0.0;
  // General family: payment schedule on a fixed output grid; outputs not on
  // the grid pay zero.
  std::vector<double> schedule_outputs;
  std::vector<double> schedule_payments;
  double eps_tie = 1e-9;

  static Contract affine(double theta0, double theta1);
  static Contract linear(double theta1);
  static Contract constant(double theta0);
  static Contract general(std::vector<double> outputs, std::vector<double> payments,
                          double eps_tie = 1e-9);

  double payment(double y) const;
};

enum class AmbiguityVariant { Singleton, AllDeltas, FiniteSet, FullSimplex };

std::string ambiguity_name(AmbiguityVariant v);

// Probability distribution over type ids, kept in declaration order.
struct TypeDistribution {
  std::vector<std::pair<std::string, double>> weights;

  double weight_sum() const;
  static TypeDistribution delta(const std::string& type_id);
};

// The set of plausible type distributions the principal is robust against.
struct AmbiguitySet {
  AmbiguityVariant variant = AmbiguityVariant::AllDeltas;
  std::vector<std::string> type_ids;       // AllDeltas / FullSimplex ground set
  std::vector<TypeDistribution> members;   // Singleton (one) / FiniteSet

  static AmbiguitySet singleton(TypeDistribution g0);
  static AmbiguitySet all_deltas(std::vector<std::string> type_ids);
  static AmbiguitySet finite_set(std::vector<TypeDistribution> members);
  static AmbiguitySet full_simplex(std::vector<std::string> type_ids);

  // Every type id the set can place weight on, in declaration order.
  std::vector<std::string> referenced_types() const;
};

// Solver grid configuration. Tolerances: eps_tie is the absolute indifference
// window for the agent, eps_val the tolerance for report identities.
struct GridConfig {
  int theta1_steps = 2001;
  int theta0_steps = 101;
  double theta0_max = -1.0;  // negative: default to max expected output
  int cost_steps = 201;
  double eps_tie = 1e-9;
  double eps_val = 1e-6;
  int general_max_outputs = 6;
};

// The unit of ingestion: technologies + ambiguity + family + grids.
struct Scenario {
  std::vector<Technology> technologies;
  AmbiguitySet ambiguity;
  ContractFamilySpec family;
  GridConfig grid;

  const Technology* find_technology(const std::string& type_id) const;
};

// A violated modeling assumption, reported as data rather than thrown.
struct Violation {
  std::string assumption;  // e.g. "Assumption 3"
  std::string where;       // field or type the violation sits on
  std::string message;
};

std::vector<Violation> validate_technology(const Technology& tech, double eps_tie,
                                           double eps_val);
std::vector<Violation> validate_scenario(const Scenario& scenario);

// Maximum expected output among actions with cost within the budget, sampled
// on the given grid. The grid must start at 0 and end at the cost cap.
ProductionCurve production_curve(const Technology& tech, std::span<const double> cost_grid,
                                 double eps_tie = 1e-9);

// Grid of the technology's own action costs (always includes 0).
std::vector<double> action_cost_grid(const Technology& tech);
ProductionCurve production_curve_at_action_costs(const Technology& tech,
                                                 double eps_tie = 1e-9);

std::vector<double> uniform_grid(double lo, double hi, int steps);

// Deterministic technology whose actions are the curve samples plus the
// outside option.
Technology technology_from_curve(const ProductionCurve& curve, std::string type_id);

// Hidden-action reduction: replace every output distribution by a point mass
// at its mean.
Technology mean_reduced(const Technology& tech);
Scenario mean_reduced(const Scenario& scenario);

double max_expected_output(const Scenario& scenario);

// Outcome of solving a scenario's three games and decomposing the family's
// optimality-gap bound.
struct GapReport {
  double z_i = 0.0;
  double z_ii = 0.0;
  double z_iii = 0.0;
  double adjustability_gap = 0.0;
  double information_rent = 0.0;
  double optimality_gap_bound = 0.0;
  Contract best_contract;

  struct PerType {
    double first_best = 0.0;
    double game_ii_value = 0.0;
    double action_cost = 0.0;
    double action_expected_output = 0.0;
  };
  std::map<std::string, PerType> per_type;
  std::vector<std::string> warnings;

  // Empty when the arithmetic identities and nonnegativity bounds hold.
  std::vector<std::string> verify(double eps_val) const;
};

}  // namespace drpa
