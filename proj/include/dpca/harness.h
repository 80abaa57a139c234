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

// Monte Carlo experiment driver.
//
// Scenario files are JSON objects with the generator parameters
//   n, m, k_min, k_max, q_max, v_min, v_max, grid_step, epsilon,
//   interest_probability, trials, seed, max_space
// a "mechanisms" array of {"name": ..., "group_size": ...} entries, an
// optional "sweep" array of partial overrides of the numeric parameters
// (one output row per mechanism and sweep point), and an optional
// "instance" (inline instance object or a path relative to the scenario
// file) that replaces the generator. With an injected instance only
// "epsilon" may be overridden by sweep points.

#ifndef DPCA_HARNESS_H_
#define DPCA_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpca/core.h"
#include "dpca/mechanisms.h"
#include "json.hpp"

namespace dpca {

struct ScenarioPoint {
  int n = 40;
  int m = 3;
  int k_min = 100;
  int k_max = 200;
  int q_max = 10;
  double v_min = 0;
  double v_max = 10;
  double grid_step = 1;
  double epsilon = 1.0;
  // Each user is interested in each type independently with this chance.
  double interest_probability = 0.8;
};

absl::Status ValidatePoint(const ScenarioPoint& point);

struct Scenario {
  ScenarioPoint base;
  std::vector<ScenarioPoint> sweep;  // empty means {base}
  int trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t max_space = 10'000'000;
  std::vector<MechanismSpec> mechanisms;
  std::optional<Instance> instance;

  std::vector<ScenarioPoint> Points() const;
};

// `base_dir` resolves a relative "instance" path.
absl::StatusOr<Scenario> ScenarioFromJson(const nlohmann::json& doc,
                                          const std::string& base_dir = ".");
absl::StatusOr<Scenario> ReadScenarioFile(const std::string& path);

// Named built-in scenarios: "desk" (n = 40, m = 3, integer grid 0..10),
// "full-small" (n = 100, m = 2..6, K in [100, 200]) and "full-practical"
// (m = 20, bids in [0, 100], n = 150..350).
absl::StatusOr<Scenario> PresetScenario(const std::string& name);

// Deterministic per (seed, trial). Users drawing no demand are redrawn.
absl::StatusOr<Instance> Generate(const ScenarioPoint& point,
                                  std::uint64_t seed, int trial);

// Independent 64-bit streams from a root seed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// The order key RunExperiment uses for `trial`; shared by all mechanisms.
RandomOrderKey TrialOrderKey(std::uint64_t seed, int trial);

struct TrialMetrics {
  double revenue = 0;
  double user_satisfaction = 0;  // winners / n
  double running_time_ms = 0;
};

struct ExperimentRow {
  ScenarioPoint point;
  int n = 0;  // actual users and types (differs from point with injection)
  int m = 0;
  int k_min = 0;
  int k_max = 0;
  MechanismSpec mechanism;
  TrialMetrics mean;
};

struct ExperimentOptions {
  Execution execution = Execution::kParallel;
  bool parallel_trials = false;
};

absl::StatusOr<std::vector<ExperimentRow>> RunExperiment(
    const Scenario& scenario, const ExperimentOptions& options = {});

// Metrics for one mechanism on one instance, timing only the mechanism call.
absl::StatusOr<TrialMetrics> RunTrial(const MechanismSpec& spec,
                                      const Instance& instance,
                                      RandomOrderKey key, std::uint64_t seed,
                                      const MechanismOptions& options);

// CSV with a header line. With include_time = false the timing column is
// dropped, leaving a byte-stable table for a fixed seed.
// One mechanism run on a fixed instance, as performed by `auction solve`.
// The order key and the mechanism's random source both derive from `seed`.
struct SolveRequest {
  MechanismSpec mechanism;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;  // overrides the instance's budget
  std::uint64_t max_space = 10'000'000;
};

absl::StatusOr<MechanismResult> Solve(const Instance& instance,
                                      const SolveRequest& request);

// Solve() rendered as indented JSON with a trailing newline.
absl::StatusOr<std::string> SolveJson(const Instance& instance,
                                      const SolveRequest& request);

std::string ToCsv(const Scenario& scenario,
                  const std::vector<ExperimentRow>& rows,
                  bool include_time = true);

}  // namespace dpca

#endif  // DPCA_HARNESS_H_
