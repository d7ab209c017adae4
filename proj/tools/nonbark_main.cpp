#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nonbark/atombath.hpp"
#include "nonbark/errors.hpp"
#include "nonbark/pdeoracle.hpp"
#include "nonbark/presets.hpp"
#include "nonbark/scenario.hpp"
#include "nonbark/series.hpp"

namespace {

struct CommonFlags {
  std::string out_dir = ".";
  std::string format;
  int jobs = 0;
};

void attach_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--out", flags->out_dir,
                  "output directory (NONBARK_OUT overrides)");
  cmd->add_option("--format", flags->format, "csv or json, beats the config");
  cmd->add_option("--jobs", flags->jobs, "worker threads, 0 = hardware");
}

nonbark::RunOptions to_options(const CommonFlags& flags,
                               const std::string& stem) {
  nonbark::RunOptions options;
  options.out_dir = flags.out_dir;
  if (const char* env = std::getenv("NONBARK_OUT")) {
    if (*env != '\0') options.out_dir = env;
  }
  options.format_override = flags.format;
  options.jobs = flags.jobs;
  options.stem = stem;
  return options;
}

std::string stem_of_path(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string base =
      slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

int run_config_text(const std::string& text,
                    const nonbark::RunOptions& options) {
  nonbark::ScenarioConfig config = nonbark::parse_config(text);
  nonbark::RunResult result = nonbark::run_scenario(config, options);
  for (const auto& note : result.notes) std::cout << note << "\n";
  for (const auto& file : result.files) std::cout << "wrote " << file << "\n";
  return result.exit_code;
}

// The sweeps are study drivers rather than scenario runs: each executes a
// fixed refinement ladder and writes one summary report.
int sweep_atom_levels(const nonbark::RunOptions& options) {
  const double gamma = 1.0;
  const nonbark::TimeWindow window{0.0, 2.0, 4.0};
  std::string rows;
  double prev = 0.0;
  bool shrinking = true;
  bool first = true;
  for (int n_side : {100, 200, 400, 800}) {
    nonbark::BathModel m =
        nonbark::BathModel::calibrated(gamma, n_side, 0.2 * n_side);
    double mag = std::abs(
        nonbark::bath_sum(m, window, nonbark::BathMode::analytic));
    if (!first && mag >= prev) shrinking = false;
    rows += first ? "\n" : ",\n";
    rows += "    {\"n_side\": " + std::to_string(n_side) +
            ", \"abs_level_sum\": " + nonbark::format_g17(mag) + "}";
    prev = mag;
    first = false;
  }
  std::string report = "{\n  \"kind\": \"atom-levels\",\n";
  report += "  \"gamma\": 1,\n  \"band_over_n\": " +
            nonbark::format_g17(0.2) + ",\n";
  report += "  \"window\": [0, 2, 4],\n";
  report += std::string("  \"sum_shrinks\": ") +
            (shrinking ? "true" : "false") + ",\n";
  report += "  \"rows\": [" + rows + "\n  ]\n}\n";
  std::string path = options.out_dir + "/" + options.stem + ".json";
  nonbark::write_text_file(path, report);
  std::cout << (shrinking ? "PASS" : "FAIL")
            << " level sum shrinks as the ladder refines\n";
  std::cout << "wrote " << path << "\n";
  return shrinking ? 0 : 1;
}

int sweep_pde_grid(const nonbark::RunOptions& options) {
  std::vector<double> errors = nonbark::free_convergence_errors();
  std::string report = "{\n  \"kind\": \"pde-grid\",\n  \"errors\": [";
  for (size_t i = 0; i < errors.size(); ++i) {
    report += (i ? ", " : "") + nonbark::format_g17(errors[i]);
  }
  report += "],\n  \"ratios\": [";
  bool second_order = true;
  for (size_t i = 0; i + 1 < errors.size(); ++i) {
    double ratio = errors[i] / errors[i + 1];
    report += (i ? ", " : "") + nonbark::format_g17(ratio);
    second_order = second_order && ratio > 3.0 && ratio < 5.0;
  }
  report += std::string("],\n  \"second_order\": ") +
            (second_order ? "true" : "false") + "\n}\n";
  std::string path = options.out_dir + "/" + options.stem + ".json";
  nonbark::write_text_file(path, report);
  std::cout << (second_order ? "PASS" : "FAIL")
            << " halving the grid step cuts the error about fourfold\n";
  std::cout << "wrote " << path << "\n";
  return second_order ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak-value laboratory for driven two-region models"};
  app.require_subcommand(1);

  std::string config_path;
  CommonFlags run_flags;
  CLI::App* run_cmd =
      app.add_subcommand("run", "execute a JSON run description");
  run_cmd->add_option("config", config_path, "path to the JSON file")
      ->required();
  attach_common(run_cmd, &run_flags);

  std::string preset_name;
  CommonFlags preset_flags;
  CLI::App* preset_cmd =
      app.add_subcommand("preset", "execute a shipped run description");
  std::string preset_help = "one of:";
  for (const auto& name : nonbark::preset_names()) {
    preset_help += " " + name;
  }
  preset_cmd->add_option("name", preset_name, preset_help)->required();
  attach_common(preset_cmd, &preset_flags);

  bool fast_only = false;
  unsigned long seed = 1;
  CommonFlags check_flags;
  CLI::App* check_cmd =
      app.add_subcommand("check", "run the invariant suite");
  check_cmd->add_flag("--fast", fast_only, "cheap subset only");
  check_cmd->add_option("--seed", seed, "seed for randomized checks");
  attach_common(check_cmd, &check_flags);

  std::string sweep_kind;
  CommonFlags sweep_flags;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "refinement studies with a JSON report");
  sweep_cmd->add_option("kind", sweep_kind, "atom-levels or pde-grid")
      ->required()
      ->check(CLI::IsMember({"atom-levels", "pde-grid"}));
  attach_common(sweep_cmd, &sweep_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      std::string text;
      try {
        text = nonbark::read_text_file(config_path);
      } catch (const nonbark::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
      }
      return run_config_text(text,
                             to_options(run_flags, stem_of_path(config_path)));
    }
    if (preset_cmd->parsed()) {
      return run_config_text(nonbark::preset_config_text(preset_name),
                             to_options(preset_flags, preset_name));
    }
    if (check_cmd->parsed()) {
      nonbark::ScenarioConfig config;
      config.model = nonbark::Model::checks;
      config.fast_only = fast_only;
      config.seed = seed;
      nonbark::RunResult result =
          nonbark::run_scenario(config, to_options(check_flags, "checks"));
      for (const auto& note : result.notes) std::cout << note << "\n";
      for (const auto& file : result.files) {
        std::cout << "wrote " << file << "\n";
      }
      return result.exit_code;
    }
    nonbark::RunOptions options =
        to_options(sweep_flags, "sweep_" + sweep_kind);
    if (sweep_kind == "atom-levels") return sweep_atom_levels(options);
    return sweep_pde_grid(options);
  } catch (const nonbark::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nonbark::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
