// Copyright 2026 The DPCA Auction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// auction: run experiment scenarios, solve single instances, and run the
// oracle verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 price
// space over the enumeration cap.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "dpca/harness.h"
#include "dpca/io.h"
#include "dpca/mechanisms.h"
#include "dpca/verify.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitSpaceCap = 3;

int Report(const absl::Status& status) {
  std::cerr << "auction: " << status.message() << "\n";
  return status.code() == absl::StatusCode::kResourceExhausted ? kExitSpaceCap
                                                               : kExitInvalid;
}

struct RunArgs {
  std::string scenario;
  std::string preset;
  std::string out;
  int trials = 0;
  bool parallel_trials = false;
  bool serial = false;
  bool no_time = false;
};

int Run(const RunArgs& args) {
  absl::StatusOr<dpca::Scenario> scenario =
      args.preset.empty() ? dpca::ReadScenarioFile(args.scenario)
                          : dpca::PresetScenario(args.preset);
  if (!scenario.ok()) return Report(scenario.status());
  if (args.trials > 0) scenario->trials = args.trials;
  if (args.preset.rfind("full-", 0) == 0) {
    std::cerr << "auction: warning: the " << args.preset
              << " preset uses full-size parameters and may run for hours\n";
  }
  const dpca::ExperimentOptions options{
      args.serial ? dpca::Execution::kSerial : dpca::Execution::kParallel,
      args.parallel_trials};
  auto rows = dpca::RunExperiment(*scenario, options);
  if (!rows.ok()) return Report(rows.status());
  const std::string csv = dpca::ToCsv(*scenario, *rows, !args.no_time);
  if (args.out.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  std::ofstream file(args.out, std::ios::binary);
  file << csv;
  if (!file) {
    std::cerr << "auction: cannot write " << args.out << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  std::string mechanism = "dpca";
  int group_size = 0;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::uint64_t max_space = 10'000'000;
};

int Solve(const SolveArgs& args) {
  auto instance = dpca::ReadInstanceFile(args.instance);
  if (!instance.ok()) return Report(instance.status());
  auto spec = dpca::ParseMechanism(args.mechanism, args.group_size);
  if (!spec.ok()) return Report(spec.status());
  const dpca::SolveRequest request{*spec, args.seed, args.epsilon,
                                   args.max_space};
  auto json = dpca::SolveJson(*instance, request);
  if (!json.ok()) return Report(json.status());
  std::cout << *json;
  return kExitOk;
}

struct VerifyArgs {
  std::vector<std::string> only;
  double scale = 1.0;
  std::uint64_t seed = dpca::verify::VerifyOptions{}.seed;
};

int Verify(const VerifyArgs& args) {
  const dpca::verify::VerifyOptions options{args.seed, args.scale};
  bool all_passed = true;
  int ran = 0;
  for (const auto& check : dpca::verify::AllChecks()) {
    if (!args.only.empty() &&
        std::find(args.only.begin(), args.only.end(), check.id) ==
            args.only.end()) {
      continue;
    }
    const auto result = check.run(options);
    std::cout << dpca::verify::FormatResult(result) << std::endl;
    all_passed = all_passed && result.passed;
    ++ran;
  }
  if (ran == 0) {
    std::cerr << "auction: no check matches --only\n";
    return kExitInvalid;
  }
  return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private combinatorial cloud auctions"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment scenario");
  auto* scenario_opt =
      run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file")
          ->check(CLI::ExistingFile);
  auto* preset_opt = run_cmd->add_option(
      "--preset", run.preset, "Built-in scenario: desk, full-small, full-practical");
  scenario_opt->excludes(preset_opt);
  run_cmd->add_option("--out", run.out, "CSV output file (default stdout)");
  run_cmd->add_option("--trials", run.trials, "Override the trial count")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--parallel-trials", run.parallel_trials,
                    "Run trials concurrently (timings then share cores)");
  run_cmd->add_flag("--serial", run.serial, "Use the serial scoring kernel");
  run_cmd->add_flag("--no-time", run.no_time, "Omit the running-time column");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run one mechanism on an instance");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--mechanism", solve.mechanism,
                        "dpca, dpca-s, dpca-m or basic");
  solve_cmd->add_option("--group-size", solve.group_size,
                        "Types per stage for dpca-m");
  solve_cmd->add_option("--seed", solve.seed, "Seed of the order key and sampler");
  solve_cmd->add_option("--epsilon", solve.epsilon,
                        "Privacy budget (overrides the instance)");
  solve_cmd->add_option("--max-space", solve.max_space,
                        "Largest price block one stage may enumerate");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle suite");
  verify_cmd->add_option("--only", verify.only, "Run only these check ids");
  verify_cmd->add_option("--scale", verify.scale,
                         "Multiply instance and trial counts")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (run_cmd->parsed()) {
    if (run.scenario.empty() && run.preset.empty()) {
      std::cerr << "auction: run needs --scenario or --preset\n";
      return kExitInvalid;
    }
    return Run(run);
  }
  if (solve_cmd->parsed()) return Solve(solve);
  return Verify(verify);
}
