#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "drpa/certify.hpp"
#include "drpa/model.hpp"
#include "drpa/solvers.hpp"

namespace drpa {

inline constexpr const char* kToolName = "drpa";
inline constexpr const char* kToolVersion = "0.1.0";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the structured scenario document (JSON). Throws ParseError with the
// offending field path.
Scenario parse_scenario(const std::string& text);

// Parses then validates; validation failures name the violated assumption.
Scenario load_scenario(const std::string& path);

std::string scenario_to_text(const Scenario& scenario);

// Report documents. Identical inputs (and seed) reproduce the emitted text
// byte for byte.
struct ReportOptions {
  std::string command;
  const GridConfig* grid = nullptr;
  std::optional<std::uint64_t> seed;
};

std::string report_solve(const SolveResult& result, const ReportOptions& opts);
std::string report_gaps(const GapReport& report, const ReportOptions& opts);
std::string report_certificate(const Certificate& cert, const ReportOptions& opts);
std::string report_minimax(const MinimaxResult& result, const ReportOptions& opts);

struct RandomScenarioParams {
  int max_types = 4;
  int max_actions = 8;      // including the outside option
  int output_pool = 4;      // distinct output levels to draw from
  double random_output_prob = 0.4;
  int theta1_steps = 501;
  int theta0_steps = 21;
};

// Deterministic seeded scenario generator. Always includes the outside
// option; redraws types that violate the nontriviality assumption; mixes
// deterministic and random-output actions.
Scenario random_scenario(std::uint64_t seed, const RandomScenarioParams& params = {});

// CLI entry point (argv without the program name). Returns the process exit
// status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drpa
