#pragma once

#include <string>
#include <vector>

namespace nonbark {

struct CheckResult {
  std::string name;
  bool fast;           // cheap enough for the --fast subset
  bool passed;
  std::string detail;  // deterministic summary of the measured values
  double seconds;      // wall time, console display only, never serialized
};

// Runs the invariant suite (fast subset or everything). Checks are pure and
// independent; they run on a worker pool of `jobs` threads (0 = hardware
// default) and come back in registry order regardless of scheduling. The
// seed feeds the randomized property checks.
std::vector<CheckResult> run_checks(bool fast_only, unsigned long seed,
                                    int jobs);

bool all_passed(const std::vector<CheckResult>& results);

// Machine-readable report; excludes timings so identical seed gives
// byte-identical output.
std::string checks_report_json(const std::vector<CheckResult>& results,
                               bool fast_only, unsigned long seed);

}  // namespace nonbark
