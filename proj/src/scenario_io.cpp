#include "drpa/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "drpa/cases.hpp"
#include "json.hpp"

namespace drpa {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& member(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_or(const json& j, const std::string& path, const std::string& key,
                 double fallback) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return number(*it, path + "." + key);
}

int integer_or(const json& j, const std::string& path, const std::string& key, int fallback) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) fail(path + "." + key, "expected an integer");
  return it->get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

OutputSpec parse_output(const json& j, const std::string& path) {
  if (j.contains("dist")) {
    const json& dist = j.at("dist");
    if (!dist.is_array() || dist.empty()) fail(path + ".dist", "expected a nonempty array");
    std::vector<OutputAtom> atoms;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const std::string ap = path + ".dist[" + std::to_string(i) + "]";
      atoms.push_back({number(member(dist[i], ap, "y"), ap + ".y"),
                       number(member(dist[i], ap, "p"), ap + ".p")});
    }
    return OutputSpec::distribution(std::move(atoms));
  }
  if (j.contains("output"))
    return OutputSpec::deterministic(number(j.at("output"), path + ".output"));
  fail(path, "action needs either 'output' or 'dist'");
}

Technology parse_technology(const json& j, const std::string& path) {
  Technology tech;
  tech.type_id = text(member(j, path, "id"), path + ".id");

  if (j.contains("curve")) {
    const json& cj = j.at("curve");
    const std::string cp = path + ".curve";
    std::string kind = text(member(cj, cp, "kind"), cp + ".kind");
    const json& params = cj.contains("params") ? cj.at("params") : cj;
    if (kind == "samples") {
      auto costs = number_list(member(params, cp, "costs"), cp + ".costs");
      auto outputs = number_list(member(params, cp, "outputs"), cp + ".outputs");
      if (costs.size() != outputs.size())
        fail(cp, "costs and outputs differ in length");
      ProductionCurve curve;
      for (std::size_t i = 0; i < costs.size(); ++i)
        curve.samples.push_back({costs[i], outputs[i]});
      curve.cost_cap = costs.empty() ? 0.0 : costs.back();
      Technology from = technology_from_curve(curve, tech.type_id);
      tech.actions = std::move(from.actions);
    } else if (kind == "forest") {
      ForestParams fp;
      fp.k = number_or(params, cp, "k", 1.0);
      fp.h = number_or(params, cp, "h", 1.0);
      fp.t = number_or(params, cp, "t", 0.0);
      fp.a0 = number_or(params, cp, "a0", 0.0);
      int steps = integer_or(params, cp, "steps", 201);
      Technology from = technology_from_curve(forest_curve(fp, steps), tech.type_id);
      tech.actions = std::move(from.actions);
    } else {
      fail(cp + ".kind", "unknown curve kind '" + kind + "'");
    }
    return tech;
  }

  const json& actions = member(j, path, "actions");
  if (!actions.is_array() || actions.empty())
    fail(path + ".actions", "expected a nonempty array");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const std::string ap = path + ".actions[" + std::to_string(i) + "]";
    Action a;
    a.cost = number(member(actions[i], ap, "cost"), ap + ".cost");
    a.output = parse_output(actions[i], ap);
    tech.actions.push_back(std::move(a));
  }
  return tech;
}

TypeDistribution parse_distribution(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object of type-id weights");
  TypeDistribution dist;
  for (auto it = j.begin(); it != j.end(); ++it)
    dist.weights.emplace_back(it.key(), number(it.value(), path + "." + it.key()));
  return dist;
}

AmbiguitySet parse_ambiguity(const json& j, const std::string& path,
                             const std::vector<std::string>& declared_types) {
  std::string variant = text(member(j, path, "variant"), path + ".variant");
  if (variant == "singleton") {
    return AmbiguitySet::singleton(
        parse_distribution(member(j, path, "weights"), path + ".weights"));
  }
  if (variant == "all_deltas" || variant == "full_simplex") {
    std::vector<std::string> ids = declared_types;
    if (j.contains("types")) {
      ids.clear();
      const json& tj = j.at("types");
      if (!tj.is_array()) fail(path + ".types", "expected an array of type ids");
      for (std::size_t i = 0; i < tj.size(); ++i)
        ids.push_back(text(tj[i], path + ".types[" + std::to_string(i) + "]"));
    }
    return variant == "all_deltas" ? AmbiguitySet::all_deltas(std::move(ids))
                                   : AmbiguitySet::full_simplex(std::move(ids));
  }
  if (variant == "finite_set") {
    const json& mj = member(j, path, "members");
    if (!mj.is_array() || mj.empty()) fail(path + ".members", "expected a nonempty array");
    std::vector<TypeDistribution> members;
    for (std::size_t i = 0; i < mj.size(); ++i)
      members.push_back(parse_distribution(mj[i], path + ".members[" + std::to_string(i) + "]"));
    return AmbiguitySet::finite_set(std::move(members));
  }
  fail(path + ".variant", "unknown ambiguity variant '" + variant + "'");
}

ContractFamilySpec parse_family(const json& j, const std::string& path) {
  std::string variant = text(member(j, path, "variant"), path + ".variant");
  if (variant == "affine") return ContractFamilySpec::affine(number_or(j, path, "theta0_max", -1.0));
  if (variant == "linear") return ContractFamilySpec::linear();
  if (variant == "constant")
    return ContractFamilySpec::constant(number_or(j, path, "theta0_max", -1.0));
  if (variant == "general") {
    auto grid = number_list(member(j, path, "output_grid"), path + ".output_grid");
    double cap = number(member(j, path, "payment_cap"), path + ".payment_cap");
    int steps = integer_or(j, path, "payment_steps", 8);
    return ContractFamilySpec::general(std::move(grid), cap, steps);
  }
  fail(path + ".variant", "unknown family variant '" + variant + "'");
}

GridConfig parse_grid(const json& j, const std::string& path) {
  GridConfig g;
  g.theta1_steps = integer_or(j, path, "theta1_steps", g.theta1_steps);
  g.theta0_steps = integer_or(j, path, "theta0_steps", g.theta0_steps);
  g.theta0_max = number_or(j, path, "theta0_max", g.theta0_max);
  g.cost_steps = integer_or(j, path, "cost_steps", g.cost_steps);
  g.eps_tie = number_or(j, path, "eps_tie", g.eps_tie);
  g.eps_val = number_or(j, path, "eps_val", g.eps_val);
  return g;
}

SalesforceParams parse_salesforce_params(const json& j, const std::string& path) {
  SalesforceParams p;
  p.cost_low = number_or(j, path, "cost_low", 0.0);
  p.cost_high = number(member(j, path, "cost_high"), path + ".cost_high");
  p.effort_low = number_or(j, path, "effort_low", 0.0);
  p.effort_high = number(member(j, path, "effort_high"), path + ".effort_high");
  p.y0 = number_or(j, path, "y0", 0.0);
  p.outputs = number_list(member(j, path, "outputs"), path + ".outputs");
  p.abar = number_or(j, path, "abar", 1.0);
  p.deltas = number_list(member(j, path, "deltas"), path + ".deltas");
  p.q = number_or(j, path, "q", 2.0);
  return p;
}

Scenario parse_scenario_json(const json& doc) {
  Scenario s;
  if (!doc.is_object()) fail("$", "scenario document must be an object");

  if (doc.contains("grid")) s.grid = parse_grid(doc.at("grid"), "grid");

  if (doc.contains("case")) {
    const json& cj = doc.at("case");
    std::string kind = text(member(cj, "case", "kind"), "case.kind");
    if (kind == "salesforce") {
      SalesforceParams p = parse_salesforce_params(
          cj.contains("params") ? cj.at("params") : cj, "case.params");
      GridConfig grid = s.grid;
      s = salesforce_scenario(p);
      s.grid = grid;
    } else if (kind == "forest") {
      const json& params = cj.contains("params") ? cj.at("params") : cj;
      ForestParams fp;
      fp.k = number_or(params, "case.params", "k", 1.0);
      fp.h = number_or(params, "case.params", "h", 1.0);
      fp.t = number_or(params, "case.params", "t", 0.0);
      fp.a0 = number_or(params, "case.params", "a0", 0.0);
      int steps = integer_or(params, "case.params", "steps", 201);
      s.technologies.push_back(technology_from_curve(forest_curve(fp, steps), "forest"));
      s.ambiguity = AmbiguitySet::all_deltas({"forest"});
      s.family = ContractFamilySpec::affine();
    } else {
      fail("case.kind", "unknown case '" + kind + "'");
    }
    if (doc.contains("ambiguity")) {
      std::vector<std::string> ids;
      for (const auto& t : s.technologies) ids.push_back(t.type_id);
      s.ambiguity = parse_ambiguity(doc.at("ambiguity"), "ambiguity", ids);
    }
    if (doc.contains("family")) s.family = parse_family(doc.at("family"), "family");
    return s;
  }

  const json& types = member(doc, "$", "types");
  if (!types.is_array() || types.empty()) fail("types", "expected a nonempty array");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < types.size(); ++i) {
    Technology tech = parse_technology(types[i], "types[" + std::to_string(i) + "]");
    ids.push_back(tech.type_id);
    s.technologies.push_back(std::move(tech));
  }

  s.ambiguity = doc.contains("ambiguity")
                    ? parse_ambiguity(doc.at("ambiguity"), "ambiguity", ids)
                    : AmbiguitySet::all_deltas(ids);
  s.family = doc.contains("family") ? parse_family(doc.at("family"), "family")
                                    : ContractFamilySpec::affine();
  return s;
}

json distribution_to_json(const TypeDistribution& dist) {
  json j = json::object();
  for (const auto& [id, w] : dist.weights) j[id] = w;
  return j;
}

json contract_to_json(const Contract& c) {
  json j;
  j["family"] = family_name(c.family);
  switch (c.family) {
    case FamilyVariant::Affine:
      j["theta0"] = c.theta0;
      j["theta1"] = c.theta1;
      break;
    case FamilyVariant::Linear:
      j["theta1"] = c.theta1;
      break;
    case FamilyVariant::Constant:
      j["theta0"] = c.theta0;
      break;
    case FamilyVariant::General:
      j["outputs"] = c.schedule_outputs;
      j["payments"] = c.schedule_payments;
      break;
  }
  return j;
}

json grid_to_json(const GridConfig& g) {
  json j;
  j["theta1_steps"] = g.theta1_steps;
  j["theta0_steps"] = g.theta0_steps;
  j["theta0_max"] = g.theta0_max;
  j["cost_steps"] = g.cost_steps;
  j["eps_tie"] = g.eps_tie;
  j["eps_val"] = g.eps_val;
  return j;
}

json provenance(const ReportOptions& opts) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = opts.command;
  if (opts.grid) j["grid"] = grid_to_json(*opts.grid);
  if (opts.seed) j["seed"] = *opts.seed;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Scenario parse_scenario(const std::string& str) {
  json doc;
  try {
    doc = json::parse(str);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario document: ") + e.what());
  }
  return parse_scenario_json(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario s = parse_scenario(buf.str());
  auto violations = validate_scenario(s);
  if (!violations.empty()) {
    std::ostringstream os;
    os << path << ": scenario violates " << violations.front().assumption << " at "
       << violations.front().where << ": " << violations.front().message;
    if (violations.size() > 1) os << " (+" << violations.size() - 1 << " more)";
    throw ParseError(os.str());
  }
  return s;
}

std::string scenario_to_text(const Scenario& s) {
  json j;
  json types = json::array();
  for (const auto& t : s.technologies) {
    json tj;
    tj["id"] = t.type_id;
    json actions = json::array();
    for (const auto& a : t.actions) {
      json aj;
      aj["cost"] = a.cost;
      if (a.output.is_deterministic()) {
        aj["output"] = a.output.atoms.front().output;
      } else {
        json dist = json::array();
        for (const auto& atom : a.output.atoms) {
          json d;
          d["y"] = atom.output;
          d["p"] = atom.probability;
          dist.push_back(d);
        }
        aj["dist"] = dist;
      }
      actions.push_back(aj);
    }
    tj["actions"] = actions;
    types.push_back(tj);
  }
  j["types"] = types;

  json amb;
  amb["variant"] = ambiguity_name(s.ambiguity.variant);
  if (s.ambiguity.variant == AmbiguityVariant::Singleton) {
    amb["weights"] = distribution_to_json(s.ambiguity.members.front());
  } else if (s.ambiguity.variant == AmbiguityVariant::FiniteSet) {
    json members = json::array();
    for (const auto& m : s.ambiguity.members) members.push_back(distribution_to_json(m));
    amb["members"] = members;
  } else {
    amb["types"] = s.ambiguity.type_ids;
  }
  j["ambiguity"] = amb;

  json fam;
  fam["variant"] = family_name(s.family.variant);
  if (s.family.variant == FamilyVariant::Affine || s.family.variant == FamilyVariant::Constant)
    fam["theta0_max"] = s.family.theta0_max;
  if (s.family.variant == FamilyVariant::General) {
    fam["output_grid"] = s.family.output_grid;
    fam["payment_cap"] = s.family.payment_cap;
    fam["payment_steps"] = s.family.payment_steps;
  }
  j["family"] = fam;
  j["grid"] = grid_to_json(s.grid);
  return dump(j);
}

std::string report_solve(const SolveResult& r, const ReportOptions& opts) {
  json j;
  j["value"] = r.value;
  j["argmax_contract"] = r.argmax_contract ? contract_to_json(*r.argmax_contract) : json();
  json pt = json::object();
  for (const auto& [id, v] : r.per_type_values) pt[id] = v;
  j["per_type_values"] = pt;
  j["worst_distribution"] = distribution_to_json(r.worst_distribution);
  j["warnings"] = r.warnings;
  j["provenance"] = provenance(opts);
  return dump(j);
}

std::string report_gaps(const GapReport& r, const ReportOptions& opts) {
  json j;
  j["z_i"] = r.z_i;
  j["z_ii"] = r.z_ii;
  j["z_iii"] = r.z_iii;
  j["adjustability_gap"] = r.adjustability_gap;
  j["information_rent"] = r.information_rent;
  j["optimality_gap_bound"] = r.optimality_gap_bound;
  j["best_contract"] = contract_to_json(r.best_contract);
  json pt = json::object();
  for (const auto& [id, p] : r.per_type) {
    json pj;
    pj["first_best"] = p.first_best;
    pj["game_ii_value"] = p.game_ii_value;
    pj["action_cost"] = p.action_cost;
    pj["action_expected_output"] = p.action_expected_output;
    pt[id] = pj;
  }
  j["per_type"] = pt;
  j["warnings"] = r.warnings;
  j["provenance"] = provenance(opts);
  return dump(j);
}

std::string report_certificate(const Certificate& c, const ReportOptions& opts) {
  json j;
  j["certified"] = c.certified;
  j["bottleneck_type"] = c.bottleneck ? json(*c.bottleneck) : json();
  j["reason"] = c.reason;
  json ev = json::object();
  for (const auto& [id, e] : c.evidence) {
    json ej;
    ej["endpoint_output"] = e.endpoint_output;
    ej["ratio"] = e.ratio;
    ej["surplus_shape"] = surplus_shape_name(e.shape);
    ev[id] = ej;
  }
  j["evidence"] = ev;
  j["z_i"] = c.z_i ? json(*c.z_i) : json();
  j["z_iii"] = c.z_iii ? json(*c.z_iii) : json();
  j["measured_gap"] = c.measured_gap ? json(*c.measured_gap) : json();
  j["provenance"] = provenance(opts);
  return dump(j);
}

std::string report_minimax(const MinimaxResult& r, const ReportOptions& opts) {
  json j;
  j["maximin"] = r.maximin;
  j["minimax"] = r.minimax;
  j["gap"] = r.gap;
  j["provenance"] = provenance(opts);
  return dump(j);
}

namespace {

// Deterministic uniforms independent of the standard library's distribution
// implementations.
double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * u01(rng);
}

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

Scenario random_scenario(std::uint64_t seed, const RandomScenarioParams& params) {
  std::mt19937_64 rng(seed);
  Scenario s;

  // Shared output pool keeps the support small enough for the desk-scale
  // general-family search.
  std::vector<double> pool;
  for (int i = 0; i < params.output_pool; ++i) pool.push_back(uniform(rng, 0.5, 8.0));
  std::sort(pool.begin(), pool.end());

  int n_types = 1 + static_cast<int>(uniform_int(rng, static_cast<std::uint64_t>(
                                                          std::max(params.max_types, 1))));
  for (int t = 0; t < n_types; ++t) {
    Technology tech;
    tech.type_id = "T" + std::to_string(t + 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      tech.actions.clear();
      tech.actions.push_back({0.0, OutputSpec::deterministic(0.0)});
      int n_act = 1 + static_cast<int>(uniform_int(
                          rng, static_cast<std::uint64_t>(std::max(params.max_actions - 1, 1))));
      for (int a = 0; a < n_act; ++a) {
        double cost = uniform(rng, 0.1, 4.0);
        if (u01(rng) < params.random_output_prob && pool.size() >= 2) {
          std::size_t i = uniform_int(rng, pool.size());
          std::size_t k = uniform_int(rng, pool.size() - 1);
          std::size_t jdx = (k >= i) ? k + 1 : k;
          double p = uniform(rng, 0.1, 0.9);
          tech.actions.push_back(
              {cost, OutputSpec::distribution({{pool[i], p}, {pool[jdx], 1.0 - p}})});
        } else {
          tech.actions.push_back(
              {cost, OutputSpec::deterministic(pool[uniform_int(rng, pool.size())])});
        }
      }
      bool nontrivial = false;
      for (const auto& a : tech.actions)
        if (a.expected_output() - a.cost > 1e-6) nontrivial = true;
      if (nontrivial) break;
      if (attempt == 63) {
        // Deterministic fallback: one clearly profitable action.
        tech.actions.push_back({0.25, OutputSpec::deterministic(pool.back())});
      }
    }
    s.technologies.push_back(std::move(tech));
  }

  std::vector<std::string> ids;
  for (const auto& t : s.technologies) ids.push_back(t.type_id);

  switch (uniform_int(rng, 4)) {
    case 0: {
      TypeDistribution g0;
      double total = 0.0;
      std::vector<double> raw;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        raw.push_back(uniform(rng, 0.05, 1.0));
        total += raw.back();
      }
      for (std::size_t i = 0; i < ids.size(); ++i) g0.weights.emplace_back(ids[i], raw[i] / total);
      s.ambiguity = AmbiguitySet::singleton(std::move(g0));
      break;
    }
    case 1:
      s.ambiguity = AmbiguitySet::all_deltas(ids);
      break;
    case 2: {
      std::vector<TypeDistribution> members;
      for (int m = 0; m < 2; ++m) {
        TypeDistribution d;
        double total = 0.0;
        std::vector<double> raw;
        for (std::size_t i = 0; i < ids.size(); ++i) {
          raw.push_back(uniform(rng, 0.05, 1.0));
          total += raw.back();
        }
        for (std::size_t i = 0; i < ids.size(); ++i) d.weights.emplace_back(ids[i], raw[i] / total);
        members.push_back(std::move(d));
      }
      s.ambiguity = AmbiguitySet::finite_set(std::move(members));
      break;
    }
    default:
      s.ambiguity = AmbiguitySet::full_simplex(ids);
      break;
  }

  s.family = ContractFamilySpec::affine();
  s.grid.theta1_steps = params.theta1_steps;
  s.grid.theta0_steps = params.theta0_steps;
  return s;
}

}  // namespace drpa
