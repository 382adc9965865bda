#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hausdorff/verify.hpp"

namespace hausdorff {

using json = nlohmann::ordered_json;

/// Strict parse: unknown keys are errors, the schema is closed.
Scenario parse_scenario(const json& j, const std::string& source_name);
Scenario load_scenario_file(const std::string& path);

bool is_suite_file(const std::string& path);

struct SuiteSpec {
  std::vector<std::string> scenario_paths;  // resolved against the suite file directory
};
SuiteSpec load_suite_file(const std::string& path);

json report_header(const std::string& command, const Scenario& sc);

json run_norm_command(const Scenario& sc);
json run_apply_command(const Scenario& sc);
json run_constant_command(const Scenario& sc);
json run_verify_command(const Scenario& sc);
json run_scan_command(const Scenario& sc);

struct SuiteOutcome {
  json report;
  bool exact_invariants_pass = false;
};

/// Runs the invariant suite over the listed scenarios. Exact invariants
/// (amplitude/symbol ratio invariance, commutator vanishing, determinant
/// bounds, dyadic bracketing) gate the outcome; approximate quantities are
/// reported but never gate.
SuiteOutcome run_suite(const SuiteSpec& suite, int workers_override, uint64_t seed_override);

std::string render_plain(const json& j);

}  // namespace hausdorff
