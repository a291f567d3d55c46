#include "drpa/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace drpa {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double OutputSpec::mean() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.output * a.probability;
  return m;
}

double OutputSpec::probability_sum() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.probability;
  return s;
}

double Technology::cost_cap() const {
  double cap = 0.0;
  for (const auto& a : actions) cap = std::max(cap, a.cost);
  return cap;
}

bool Technology::has_outside_option(double eps) const {
  for (const auto& a : actions) {
    if (std::abs(a.cost) <= eps && a.output.is_deterministic() &&
        std::abs(a.output.atoms.front().output) <= eps) {
      return true;
    }
  }
  return false;
}

std::string family_name(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::General: return "general";
    case FamilyVariant::Affine: return "affine";
    case FamilyVariant::Linear: return "linear";
    case FamilyVariant::Constant: return "constant";
  }
  return "unknown";
}

ContractFamilySpec ContractFamilySpec::affine(double theta0_max) {
  ContractFamilySpec f;
  f.variant = FamilyVariant::Affine;
  f.theta0_max = theta0_max;
  return f;
}

ContractFamilySpec ContractFamilySpec::linear() {
  ContractFamilySpec f;
  f.variant = FamilyVariant::Linear;
  return f;
}

ContractFamilySpec ContractFamilySpec::constant(double theta0_max) {
  ContractFamilySpec f;
  f.variant = FamilyVariant::Constant;
  f.theta0_max = theta0_max;
  return f;
}

ContractFamilySpec ContractFamilySpec::general(std::vector<double> output_grid,
                                               double payment_cap, int payment_steps) {
  ContractFamilySpec f;
  f.variant = FamilyVariant::General;
  f.output_grid = std::move(output_grid);
  f.payment_cap = payment_cap;
  f.payment_steps = payment_steps;
  return f;
}

Contract Contract::affine(double theta0, double theta1) {
  Contract c;
  c.family = FamilyVariant::Affine;
  c.theta0 = theta0;
  c.theta1 = theta1;
  return c;
}

Contract Contract::linear(double theta1) {
  Contract c;
  c.family = FamilyVariant::Linear;
  c.theta1 = theta1;
  return c;
}

Contract Contract::constant(double theta0) {
  Contract c;
  c.family = FamilyVariant::Constant;
  c.theta0 = theta0;
  return c;
}

Contract Contract::general(std::vector<double> outputs, std::vector<double> payments,
                           double eps_tie) {
  if (outputs.size() != payments.size())
    throw std::invalid_argument("general contract: outputs and payments differ in length");
  Contract c;
  c.family = FamilyVariant::General;
  c.schedule_outputs = std::move(outputs);
  c.schedule_payments = std::move(payments);
  c.eps_tie = eps_tie;
  return c;
}

double Contract::payment(double y) const {
  switch (family) {
    case FamilyVariant::Affine: return theta0 + theta1 * y;
    case FamilyVariant::Linear: return theta1 * y;
    case FamilyVariant::Constant: return theta0;
    case FamilyVariant::General: {
      for (std::size_t i = 0; i < schedule_outputs.size(); ++i) {
        if (std::abs(schedule_outputs[i] - y) <= eps_tie) return schedule_payments[i];
      }
      return 0.0;  // off-grid outputs pay nothing
    }
  }
  return 0.0;
}

std::string ambiguity_name(AmbiguityVariant v) {
  switch (v) {
    case AmbiguityVariant::Singleton: return "singleton";
    case AmbiguityVariant::AllDeltas: return "all_deltas";
    case AmbiguityVariant::FiniteSet: return "finite_set";
    case AmbiguityVariant::FullSimplex: return "full_simplex";
  }
  return "unknown";
}

double TypeDistribution::weight_sum() const {
  double s = 0.0;
  for (const auto& [id, w] : weights) s += w;
  return s;
}

TypeDistribution TypeDistribution::delta(const std::string& type_id) {
  return {{{type_id, 1.0}}};
}

AmbiguitySet AmbiguitySet::singleton(TypeDistribution g0) {
  AmbiguitySet a;
  a.variant = AmbiguityVariant::Singleton;
  a.members = {std::move(g0)};
  return a;
}

AmbiguitySet AmbiguitySet::all_deltas(std::vector<std::string> type_ids) {
  AmbiguitySet a;
  a.variant = AmbiguityVariant::AllDeltas;
  a.type_ids = std::move(type_ids);
  return a;
}

AmbiguitySet AmbiguitySet::finite_set(std::vector<TypeDistribution> members) {
  AmbiguitySet a;
  a.variant = AmbiguityVariant::FiniteSet;
  a.members = std::move(members);
  return a;
}

AmbiguitySet AmbiguitySet::full_simplex(std::vector<std::string> type_ids) {
  AmbiguitySet a;
  a.variant = AmbiguityVariant::FullSimplex;
  a.type_ids = std::move(type_ids);
  return a;
}

std::vector<std::string> AmbiguitySet::referenced_types() const {
  std::vector<std::string> ids;
  auto push = [&ids](const std::string& id) {
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  };
  for (const auto& id : type_ids) push(id);
  for (const auto& m : members)
    for (const auto& [id, w] : m.weights) push(id);
  return ids;
}

const Technology* Scenario::find_technology(const std::string& type_id) const {
  for (const auto& t : technologies)
    if (t.type_id == type_id) return &t;
  return nullptr;
}

std::vector<Violation> validate_technology(const Technology& tech, double eps_tie,
                                           double eps_val) {
  std::vector<Violation> v;
  const std::string where = "type '" + tech.type_id + "'";
  if (tech.actions.empty()) {
    v.push_back({"Assumption 3", where, "technology has no actions"});
    return v;
  }
  for (std::size_t i = 0; i < tech.actions.size(); ++i) {
    const Action& a = tech.actions[i];
    const std::string aw = where + " action " + std::to_string(i);
    if (a.cost < -eps_tie)
      v.push_back({"Assumption 6", aw, "negative cost " + fmt(a.cost)});
    if (a.output.atoms.empty()) {
      v.push_back({"Assumption 6", aw, "empty output distribution"});
      continue;
    }
    double psum = a.output.probability_sum();
    if (std::abs(psum - 1.0) > 1e-12)
      v.push_back({"Assumption 6", aw, "probabilities sum to " + fmt(psum)});
    for (const auto& atom : a.output.atoms) {
      if (atom.probability < -1e-12)
        v.push_back({"Assumption 6", aw, "negative probability " + fmt(atom.probability)});
      if (atom.output < -eps_tie)
        v.push_back({"Assumption 6", aw, "negative output " + fmt(atom.output)});
    }
  }
  if (!tech.has_outside_option(eps_tie))
    v.push_back({"Assumption 3", where, "missing outside option (cost 0, output 0)"});
  bool nontrivial = false;
  for (const auto& a : tech.actions)
    if (a.expected_output() - a.cost > eps_val) nontrivial = true;
  if (!nontrivial)
    v.push_back({"Assumption 5", where,
                 "no action with expected output strictly above its cost"});
  return v;
}

std::vector<Violation> validate_scenario(const Scenario& scenario) {
  std::vector<Violation> v;
  const double eps_tie = scenario.grid.eps_tie;
  const double eps_val = scenario.grid.eps_val;

  if (scenario.technologies.empty())
    v.push_back({"Assumption 2", "types", "scenario declares no technologies"});
  std::set<std::string> seen;
  for (const auto& t : scenario.technologies) {
    if (!seen.insert(t.type_id).second)
      v.push_back({"Assumption 2", "types", "duplicate type id '" + t.type_id + "'"});
    auto tv = validate_technology(t, eps_tie, eps_val);
    v.insert(v.end(), tv.begin(), tv.end());
  }

  for (const auto& id : scenario.ambiguity.referenced_types()) {
    if (!scenario.find_technology(id))
      v.push_back({"Assumption 2", "ambiguity", "unknown type id '" + id + "'"});
  }
  const auto& amb = scenario.ambiguity;
  if ((amb.variant == AmbiguityVariant::Singleton && amb.members.size() != 1) ||
      (amb.variant == AmbiguityVariant::FiniteSet && amb.members.empty()))
    v.push_back({"Assumption 2", "ambiguity", "ambiguity set has no members"});
  if ((amb.variant == AmbiguityVariant::AllDeltas ||
       amb.variant == AmbiguityVariant::FullSimplex) &&
      amb.type_ids.empty())
    v.push_back({"Assumption 2", "ambiguity", "ambiguity ground set is empty"});
  for (std::size_t m = 0; m < amb.members.size(); ++m) {
    const auto& dist = amb.members[m];
    const std::string where = "ambiguity member " + std::to_string(m);
    double sum = dist.weight_sum();
    if (std::abs(sum - 1.0) > 1e-12)
      v.push_back({"Assumption 2", where, "weights sum to " + fmt(sum)});
    for (const auto& [id, w] : dist.weights)
      if (w < -1e-12)
        v.push_back({"Assumption 2", where, "negative weight on '" + id + "'"});
  }

  const auto& fam = scenario.family;
  if (fam.variant == FamilyVariant::General) {
    if (fam.payment_cap < 0.0)
      v.push_back({"Assumption 6", "family.payment_cap",
                   "negative payment cap " + fmt(fam.payment_cap)});
    if (fam.output_grid.empty())
      v.push_back({"Assumption 6", "family.output_grid", "general family without output grid"});
    if (fam.payment_steps < 2)
      v.push_back({"Assumption 6", "family.payment_steps", "needs at least 2 payment levels"});
  }
  if ((fam.variant == FamilyVariant::Affine || fam.variant == FamilyVariant::Constant) &&
      fam.theta0_max < 0.0 && fam.theta0_max != -1.0)
    v.push_back({"Assumption 6", "family.theta0_max",
                 "negative offset cap " + fmt(fam.theta0_max)});

  const auto& g = scenario.grid;
  if (g.theta1_steps < 2)
    v.push_back({"grid", "grid.theta1_steps", "grid steps must be at least 2"});
  if (g.theta0_steps < 2)
    v.push_back({"grid", "grid.theta0_steps", "grid steps must be at least 2"});
  if (g.cost_steps < 2)
    v.push_back({"grid", "grid.cost_steps", "grid steps must be at least 2"});
  return v;
}

ProductionCurve production_curve(const Technology& tech, std::span<const double> cost_grid,
                                 double eps_tie) {
  if (tech.actions.empty()) throw std::runtime_error("no actions");
  if (cost_grid.empty()) throw std::invalid_argument("production_curve: empty cost grid");

  std::vector<double> grid(cost_grid.begin(), cost_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-15; }),
             grid.end());

  const double cbar = tech.cost_cap();
  if (grid.front() > eps_tie || grid.front() < -eps_tie)
    throw std::invalid_argument("production_curve: cost grid must start at 0");
  if (std::abs(grid.back() - cbar) > eps_tie)
    throw std::invalid_argument("production_curve: cost grid must end at the cost cap");

  ProductionCurve curve;
  curve.cost_cap = cbar;
  curve.samples.reserve(grid.size());
  for (double c : grid) {
    double best = 0.0;  // declining is always available
    for (const auto& a : tech.actions)
      if (a.cost <= c + eps_tie) best = std::max(best, a.expected_output());
    curve.samples.push_back({c, best});
  }
  return curve;
}

std::vector<double> action_cost_grid(const Technology& tech) {
  std::vector<double> grid;
  grid.push_back(0.0);
  for (const auto& a : tech.actions) grid.push_back(a.cost);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-15; }),
             grid.end());
  return grid;
}

ProductionCurve production_curve_at_action_costs(const Technology& tech, double eps_tie) {
  auto grid = action_cost_grid(tech);
  return production_curve(tech, grid, eps_tie);
}

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("uniform_grid: steps must be at least 2");
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  g.back() = hi;
  return g;
}

Technology technology_from_curve(const ProductionCurve& curve, std::string type_id) {
  Technology tech;
  tech.type_id = std::move(type_id);
  tech.actions.push_back({0.0, OutputSpec::deterministic(0.0)});
  for (const auto& s : curve.samples) {
    if (s.cost <= 1e-15 && std::abs(s.output) <= 1e-15) continue;  // outside option already there
    tech.actions.push_back({s.cost, OutputSpec::deterministic(s.output)});
  }
  return tech;
}

Technology mean_reduced(const Technology& tech) {
  Technology out;
  out.type_id = tech.type_id;
  out.actions.reserve(tech.actions.size());
  for (const auto& a : tech.actions)
    out.actions.push_back({a.cost, OutputSpec::deterministic(a.expected_output())});
  return out;
}

Scenario mean_reduced(const Scenario& scenario) {
  Scenario out = scenario;
  for (auto& t : out.technologies) t = mean_reduced(t);
  return out;
}

double max_expected_output(const Scenario& scenario) {
  double m = 0.0;
  for (const auto& t : scenario.technologies)
    for (const auto& a : t.actions) m = std::max(m, a.expected_output());
  return m;
}

std::vector<std::string> GapReport::verify(double eps_val) const {
  std::vector<std::string> issues;
  auto check = [&issues, eps_val](double got, double want, const std::string& what) {
    if (std::abs(got - want) > eps_val)
      issues.push_back(what + ": " + fmt(got) + " vs " + fmt(want));
  };
  check(adjustability_gap, z_iii - z_ii, "adjustability_gap identity");
  check(information_rent, z_ii - z_i, "information_rent identity");
  check(optimality_gap_bound, z_iii - z_i, "optimality_gap_bound identity");
  if (adjustability_gap < -eps_val) issues.push_back("adjustability_gap negative");
  if (information_rent < -eps_val) issues.push_back("information_rent negative");
  if (optimality_gap_bound < -eps_val) issues.push_back("optimality_gap_bound negative");
  return issues;
}

}  // namespace drpa
