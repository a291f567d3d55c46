#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drpa/cases.hpp"
#include "drpa/certify.hpp"
#include "drpa/scenario_io.hpp"
#include "drpa/solvers.hpp"
#include "json.hpp"

namespace drpa {

namespace {

using json = nlohmann::ordered_json;

struct GridOverrides {
  int theta1_steps = -1;
  int theta0_steps = -1;
  double theta0_max = -2.0;
  int cost_steps = -1;
  double eps_tie = -1.0;
  double eps_val = -1.0;

  void apply(GridConfig& g) const {
    if (theta1_steps > 0) g.theta1_steps = theta1_steps;
    if (theta0_steps > 0) g.theta0_steps = theta0_steps;
    if (theta0_max > -2.0) g.theta0_max = theta0_max;
    if (cost_steps > 0) g.cost_steps = cost_steps;
    if (eps_tie >= 0.0) g.eps_tie = eps_tie;
    if (eps_val >= 0.0) g.eps_val = eps_val;
  }
};

void add_grid_flags(CLI::App* cmd, GridOverrides& o) {
  cmd->add_option("--grid-theta1-steps", o.theta1_steps, "override theta1 grid steps");
  cmd->add_option("--grid-theta0-steps", o.theta0_steps, "override theta0 grid steps");
  cmd->add_option("--grid-theta0-max", o.theta0_max, "override theta0 cap");
  cmd->add_option("--grid-cost-steps", o.cost_steps, "override cost grid steps");
  cmd->add_option("--grid-eps-tie", o.eps_tie, "override tie tolerance");
  cmd->add_option("--grid-eps-val", o.eps_val, "override value tolerance");
}

void emit(const std::string& doc, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << doc;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << doc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"distributionally robust principal-agent solver and certifier"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  GridOverrides grid;

  auto add_scenario_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("scenario", scenario_path, "scenario document path")->required();
    cmd->add_option("--out", out_path, "write the report to a file");
    add_grid_flags(cmd, grid);
    return cmd;
  };

  CLI::App* solve_i = add_scenario_cmd("solve-i", "Game I: the distributionally robust game");
  CLI::App* solve_ii = add_scenario_cmd("solve-ii", "Game II: type revealed before contracting");
  CLI::App* solve_iii = add_scenario_cmd("solve-iii", "Game III: first-best benchmark");
  CLI::App* gaps = add_scenario_cmd("gaps", "decompose the optimality-gap bound");
  CLI::App* certify = add_scenario_cmd("certify", "certify affine/linear optimality");
  CLI::App* envelope = add_scenario_cmd("envelope", "surplus curves, envelopes, classification");
  CLI::App* minimax = add_scenario_cmd("minimax", "maximin vs minimax counterpart");

  CLI::App* forest = app.add_subcommand("case-forest", "forest conservation case study");
  ForestParams fp;
  double forest_p = 0.5;
  int forest_steps = 201;
  forest->set_help_flag("--help", "print help");  // frees -h for the cost curvature
  forest->add_option("--k", fp.k, "utility per conservation unit")->required();
  forest->add_option("--h", fp.h, "quadratic cost curvature")->required();
  forest->add_option("--t", fp.t, "nominal conservation type in [0,1]");
  forest->add_option("--a0", fp.a0, "total forest area");
  forest->add_option("--p", forest_p, "linear contract slope (default 0.5)");
  forest->add_option("--steps", forest_steps, "curve samples");
  forest->add_option("--out", out_path, "write the report to a file");

  CLI::App* sales = app.add_subcommand("case-salesforce", "salesforce incentivization case study");
  SalesforceParams sp;
  sales->add_option("--cost-low", sp.cost_low, "c(e_l)");
  sales->add_option("--cost-high", sp.cost_high, "c(e_h)")->required();
  sales->add_option("--effort-low", sp.effort_low, "e_l");
  sales->add_option("--effort-high", sp.effort_high, "e_h")->required();
  sales->add_option("--y0", sp.y0, "baseline output y_0");
  sales->add_option("--y", sp.outputs, "output levels y_1..y_n")->required();
  sales->add_option("--abar", sp.abar, "nominal weight");
  sales->add_option("--delta", sp.deltas, "deviations delta_1..delta_n")->required();
  sales->add_option("--q", sp.q, "uncertainty norm exponent (q > 1)");
  sales->add_option("--out", out_path, "write the report to a file");

  CLI::App* validate = app.add_subcommand("validate", "randomized regression gate");
  int count = 20;
  std::uint64_t seed = 1;
  RandomScenarioParams rparams;
  validate->add_option("--count", count, "number of random scenarios");
  validate->add_option("--seed", seed, "base seed");
  validate->add_option("--max-types", rparams.max_types, "max technology types");
  validate->add_option("--max-actions", rparams.max_actions, "max actions per type");
  validate->add_option("--out", out_path, "write the report to a file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code;
  }

  try {
    auto load = [&]() {
      Scenario s = load_scenario(scenario_path);
      grid.apply(s.grid);
      return s;
    };
    ReportOptions opts;

    if (solve_i->parsed() || solve_ii->parsed() || solve_iii->parsed()) {
      Scenario s = load();
      opts.grid = &s.grid;
      SolveResult r;
      if (solve_i->parsed()) {
        opts.command = "solve-i";
        r = solve_game_i(s);
      } else if (solve_ii->parsed()) {
        opts.command = "solve-ii";
        r = solve_game_ii(s);
      } else {
        opts.command = "solve-iii";
        r = solve_game_iii(s);
      }
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      emit(report_solve(r, opts), out_path, out);
      return 0;
    }

    if (gaps->parsed()) {
      Scenario s = load();
      opts.command = "gaps";
      opts.grid = &s.grid;
      GapReport r = decompose_gap(s);
      for (const auto& w : r.warnings) err << "warning: " << w << "\n";
      emit(report_gaps(r, opts), out_path, out);
      return 0;
    }

    if (certify->parsed()) {
      Scenario s = load();
      opts.command = "certify";
      opts.grid = &s.grid;
      Certificate c = certify_affine_optimal(s);
      emit(report_certificate(c, opts), out_path, out);
      return 0;
    }

    if (minimax->parsed()) {
      Scenario s = load();
      opts.command = "minimax";
      opts.grid = &s.grid;
      MinimaxResult r = minimax_counterpart(s);
      emit(report_minimax(r, opts), out_path, out);
      return 0;
    }

    if (envelope->parsed()) {
      Scenario s = load();
      json j;
      json types = json::object();
      for (const auto& tech : s.technologies) {
        ProductionCurve curve = production_curve_at_action_costs(tech, s.grid.eps_tie);
        SurplusCurve surplus = SurplusCurve::from_production(curve);
        SurplusCurve env = concave_envelope(surplus);
        auto cls = classify_surplus(curve, s.grid.eps_val);
        json tj;
        json cj = json::array(), sj = json::array(), ej = json::array();
        for (const auto& p : curve.samples) cj.push_back(p.cost);
        for (const auto& p : surplus.points) sj.push_back(p.surplus);
        for (const auto& p : env.points) ej.push_back(p.surplus);
        tj["costs"] = cj;
        tj["surplus"] = sj;
        tj["envelope"] = ej;
        tj["classification"] = surplus_shape_name(cls.classification);
        types[tech.type_id] = tj;
      }
      j["types"] = types;
      ReportOptions eopts;
      eopts.command = "envelope";
      eopts.grid = &s.grid;
      json prov;
      prov["tool"] = kToolName;
      prov["version"] = kToolVersion;
      prov["command"] = "envelope";
      j["provenance"] = prov;
      emit(j.dump(2) + "\n", out_path, out);
      return 0;
    }

    if (forest->parsed()) {
      ForestRatio r = forest_ratio_bound(fp);
      json j;
      j["params"] = {{"k", fp.k}, {"h", fp.h}, {"t", fp.t}, {"a0", fp.a0}};
      j["cost_cap"] = forest_cost_cap(fp);
      j["payoff_at_p"] = forest_linear_payoff(fp, forest_p);
      j["p"] = forest_p;
      j["payoff_at_half"] = r.payoff_at_half;
      j["surplus_upper_bound"] = r.surplus_upper_bound;
      j["ratio"] = r.ratio;
      json sweep = json::array();
      for (int i = 0; i <= 10; ++i) {
        ForestParams q = fp;
        q.t = i / 10.0;
        ForestRatio rr = forest_ratio_bound(q);
        sweep.push_back({{"t", q.t}, {"ratio", rr.ratio}});
      }
      j["ratio_sweep"] = sweep;
      json prov;
      prov["tool"] = kToolName;
      prov["version"] = kToolVersion;
      prov["command"] = "case-forest";
      j["provenance"] = prov;
      emit(j.dump(2) + "\n", out_path, out);
      return 0;
    }

    if (sales->parsed()) {
      double slope = salesforce_optimal_slope(sp);
      SalesforceSlopes slopes = salesforce_slopes(sp);
      json j;
      j["theta1_star"] = slope;
      j["slope_capped"] = slope >= 1.0 - 1e-12;
      j["induced_curve"] = {{"slope_worst", slopes.slope_worst},
                            {"slope_best", slopes.slope_best},
                            {"cost_cap", slopes.cost_cap}};
      if (slope < 1.0 - 1e-12) {
        Scenario s = salesforce_scenario(sp);
        Certificate c = certify_affine_optimal(s);
        j["certified"] = c.certified;
        j["bottleneck_type"] = c.bottleneck ? json(*c.bottleneck) : json();
        j["measured_gap"] = c.measured_gap ? json(*c.measured_gap) : json();
      } else {
        j["note"] = "slope hits the theta1 <= 1 cap; the worst-case type has no surplus";
      }
      json prov;
      prov["tool"] = kToolName;
      prov["version"] = kToolVersion;
      prov["command"] = "case-salesforce";
      j["provenance"] = prov;
      emit(j.dump(2) + "\n", out_path, out);
      return 0;
    }

    if (validate->parsed()) {
      std::ostringstream body;
      int failures = 0;
      for (int i = 0; i < count; ++i) {
        std::uint64_t s_i = seed + static_cast<std::uint64_t>(i);
        std::string verdict = "ok";
        std::string detail;
        try {
          Scenario s = random_scenario(s_i, rparams);
          auto violations = validate_scenario(s);
          if (!violations.empty())
            throw std::runtime_error("generator produced an invalid scenario: " +
                                     violations.front().message);
          GapReport r = decompose_gap(s);
          auto issues = r.verify(s.grid.eps_val);
          if (!issues.empty()) throw std::runtime_error(issues.front());
          std::ostringstream d;
          d << "z=(" << r.z_i << ", " << r.z_ii << ", " << r.z_iii << ")";
          detail = d.str();
        } catch (const std::exception& e) {
          verdict = "FAIL";
          detail = e.what();
          ++failures;
        }
        body << verdict << " instance " << i << " seed=" << s_i << " " << detail << "\n";
      }
      body << (failures == 0 ? "PASS" : "FAIL") << " " << (count - failures) << "/" << count
           << " instances\n";
      emit(body.str(), out_path, out);
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  err << "error: no command dispatched\n";
  return 1;
}

}  // namespace drpa
