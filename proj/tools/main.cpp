#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hausdorff/scenario.hpp"

namespace {

int write_report(const hausdorff::json& report, const std::string& out_path,
                 const std::string& format) {
  const std::string body =
      format == "plain" ? hausdorff::render_plain(report) : report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << body;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff operator and variable-exponent norm toolkit"};
  std::string scenario_path, command = "verify", out_path, format = "json";
  int workers = 0;
  std::uint64_t seed = 0;
  app.add_option("--scenario", scenario_path, "scenario (or suite) JSON file")->required();
  app.add_option("--command", command, "one of: norm, apply, constant, verify, scan, suite")
      ->check(CLI::IsMember({"norm", "apply", "constant", "verify", "scan", "suite"}));
  app.add_option("--out", out_path, "report output path (default: stdout)");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "plain"}));
  app.add_option("--workers", workers, "worker count for inner parallelism (default from scenario)");
  app.add_option("--seed", seed, "seed override for randomized sampling");
  CLI11_PARSE(app, argc, argv);

  try {
    if (command == "suite") {
      const auto suite = hausdorff::load_suite_file(scenario_path);
      const auto outcome = hausdorff::run_suite(suite, workers, seed);
      const int rc = write_report(outcome.report, out_path, format);
      if (rc != 0) return rc;
      return outcome.exact_invariants_pass ? 0 : 1;
    }
    hausdorff::Scenario sc = hausdorff::load_scenario_file(scenario_path);
    if (workers > 0) sc.workers = workers;
    if (seed != 0) {
      sc.seed = seed;
      sc.grids.lip_pairs.seed = seed;
    }
    hausdorff::json report;
    if (command == "norm")
      report = hausdorff::run_norm_command(sc);
    else if (command == "apply")
      report = hausdorff::run_apply_command(sc);
    else if (command == "constant")
      report = hausdorff::run_constant_command(sc);
    else if (command == "verify")
      report = hausdorff::run_verify_command(sc);
    else
      report = hausdorff::run_scan_command(sc);
    return write_report(report, out_path, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
