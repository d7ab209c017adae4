#pragma once

#include <map>
#include <string>
#include <vector>

#include "nonbark/series.hpp"

namespace nonbark {

enum class Model {
  atom_decay,        // analytic bath weak values over a time grid, or the
                     // growth sweep of the resonant level vs window length
  tunnel_closed,     // closed-form sweet-spot series
  tunnel_quadrature, // train product with quadrature denominator
  tunnel_pde,        // grid-solver oracle
  checks             // invariant suite, report file + exit status
};

std::string model_name(Model m);

struct GridSpec {
  bool present = false;
  bool centered = false;  // half_width around each spot center instead of
                          // absolute bounds
  double min = 0.0;
  double max = 0.0;
  double half_width = 0.0;
  int points = 0;
};

struct SpotRequest {
  int n, m;
};

// One JSON document's worth of run description. Numeric parameters live in
// `params` under the module's own field names; everything else is typed.
struct ScenarioConfig {
  Model model = Model::checks;
  std::string format = "csv";
  unsigned long seed = 1;
  std::map<std::string, double> params;

  bool has_window = false;  // atom_decay in-window profile
  double t_i = 0.0;
  double t_f = 0.0;
  GridSpec sweep;  // atom_decay growth mode when present

  double big_t_over_lv = 0.0;  // tunnel post-selection time, units of L/v
  double t_over_lv = -1.0;     // tunnel evaluation time, < 0 means T/2
  std::vector<SpotRequest> spots;  // tunnel_closed subset, empty means all

  GridSpec grid;  // output coordinate grid
  bool fast_only = false;  // checks subset
};

// Strict parse: unknown keys, wrong types, and out-of-range values all
// throw ConfigError naming the offending field path.
ScenarioConfig parse_config(const std::string& json_text);

// Fail-fast module-invariant validation; throws ConfigError before any
// computation starts.
void validate_config(const ScenarioConfig& config);

struct RunOptions {
  std::string out_dir = ".";
  std::string format_override;  // empty keeps the config's format
  int jobs = 0;                 // worker cap, 0 = hardware default
  std::string stem;             // output filename stem, default model name
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 invariant failure, 2 config error
  std::vector<std::string> files;
  std::vector<std::string> notes;  // regime warnings and check summaries
};

// Runs a validated config to completion, writing deterministic output
// files (same config and seed give byte-identical bytes). Module errors
// propagate as exceptions; the checks model instead reports failures
// through exit_code 1.
RunResult run_scenario(const ScenarioConfig& config,
                       const RunOptions& options);

}  // namespace nonbark
