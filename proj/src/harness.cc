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

#include "dpca/harness.h"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <random>

#include "absl/strings/str_cat.h"
#include "dpca/expmech.h"
#include "dpca/io.h"

namespace dpca {
namespace {

using nlohmann::json;

constexpr std::uint64_t kGenerateStream = 0;
constexpr std::uint64_t kOrderKeyStream = 1;
constexpr std::uint64_t kMechanismStream = 2;

std::uint64_t SplitMix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int UniformInt(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

absl::Status ApplyPointField(ScenarioPoint& p, const std::string& key,
                             const json& value) {
  if (!value.is_number()) {
    return absl::InvalidArgumentError(
        absl::StrCat("scenario field '", key, "' must be a number"));
  }
  auto as_int = [&](int& field) -> absl::Status {
    if (!value.is_number_integer()) {
      return absl::InvalidArgumentError(
          absl::StrCat("scenario field '", key, "' must be an integer"));
    }
    field = value.get<int>();
    return absl::OkStatus();
  };
  if (key == "n") return as_int(p.n);
  if (key == "m") return as_int(p.m);
  if (key == "k_min") return as_int(p.k_min);
  if (key == "k_max") return as_int(p.k_max);
  if (key == "q_max") return as_int(p.q_max);
  const double v = value.get<double>();
  if (key == "v_min") p.v_min = v;
  else if (key == "v_max") p.v_max = v;
  else if (key == "grid_step") p.grid_step = v;
  else if (key == "epsilon") p.epsilon = v;
  else if (key == "interest_probability") p.interest_probability = v;
  else return absl::InvalidArgumentError(absl::StrCat("unknown field '", key, "'"));
  return absl::OkStatus();
}

bool IsPointField(const std::string& key) {
  static const char* const kFields[] = {
      "n",     "m",        "k_min",     "k_max",   "q_max",
      "v_min", "v_max",    "grid_step", "epsilon", "interest_probability"};
  for (const char* f : kFields) {
    if (key == f) return true;
  }
  return false;
}

std::string Fixed(double v, int precision) {
  char buf[64];
  auto [end, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return std::string(buf, end);
}

std::string Shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

absl::Status ValidatePoint(const ScenarioPoint& p) {
  if (p.n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (p.m < 1) return absl::InvalidArgumentError("m must be at least 1");
  if (p.k_min < 0 || p.k_min > p.k_max) {
    return absl::InvalidArgumentError("need 0 <= k_min <= k_max");
  }
  if (!(p.interest_probability > 0 && p.interest_probability <= 1)) {
    return absl::InvalidArgumentError("interest_probability must be in (0, 1]");
  }
  return AuctionConfig::Create(p.q_max, p.v_min, p.v_max, p.grid_step,
                               p.epsilon)
      .status();
}

std::vector<ScenarioPoint> Scenario::Points() const {
  if (sweep.empty()) return {base};
  return sweep;
}

absl::StatusOr<Scenario> ScenarioFromJson(const json& doc,
                                          const std::string& base_dir) {
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("scenario must be a JSON object");
  }
  Scenario scn;
  for (const auto& [key, value] : doc.items()) {
    if (IsPointField(key)) {
      if (auto st = ApplyPointField(scn.base, key, value); !st.ok()) return st;
    } else if (key == "trials") {
      if (!value.is_number_integer()) {
        return absl::InvalidArgumentError("trials must be an integer");
      }
      scn.trials = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        return absl::InvalidArgumentError("seed must be a non-negative integer");
      }
      scn.seed = value.get<std::uint64_t>();
    } else if (key == "max_space") {
      if (!value.is_number_unsigned()) {
        return absl::InvalidArgumentError("max_space must be a positive integer");
      }
      scn.max_space = value.get<std::uint64_t>();
    } else if (key == "mechanisms" || key == "sweep" || key == "instance") {
      // handled below
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("scenario: unknown field '", key, "'"));
    }
  }
  if (scn.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");

  auto mech_it = doc.find("mechanisms");
  if (mech_it == doc.end() || !mech_it->is_array() || mech_it->empty()) {
    return absl::InvalidArgumentError(
        "scenario needs a non-empty 'mechanisms' array");
  }
  for (const json& mj : *mech_it) {
    if (auto st = CheckKeys(mj, {"name", "group_size"}, "mechanism"); !st.ok()) {
      return st;
    }
    if (!mj.contains("name") || !mj["name"].is_string()) {
      return absl::InvalidArgumentError("mechanism needs a string 'name'");
    }
    int t = 0;
    if (mj.contains("group_size")) {
      if (!mj["group_size"].is_number_integer()) {
        return absl::InvalidArgumentError("group_size must be an integer");
      }
      t = mj["group_size"].get<int>();
    }
    auto spec = ParseMechanism(mj["name"].get<std::string>(), t);
    if (!spec.ok()) return spec.status();
    scn.mechanisms.push_back(*spec);
  }

  if (auto it = doc.find("instance"); it != doc.end()) {
    absl::StatusOr<Instance> inst = absl::InvalidArgumentError(
        "instance must be an object or a file path");
    if (it->is_string()) {
      std::filesystem::path path(it->get<std::string>());
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      inst = ReadInstanceFile(path.string());
    } else if (it->is_object()) {
      inst = InstanceFromJson(*it);
    }
    if (!inst.ok()) return inst.status();
    scn.instance = std::move(*inst);
  }

  if (auto it = doc.find("sweep"); it != doc.end()) {
    if (!it->is_array() || it->empty()) {
      return absl::InvalidArgumentError("sweep must be a non-empty array");
    }
    for (const json& override_json : *it) {
      if (!override_json.is_object()) {
        return absl::InvalidArgumentError("sweep entries must be objects");
      }
      ScenarioPoint p = scn.base;
      for (const auto& [key, value] : override_json.items()) {
        if (!IsPointField(key)) {
          return absl::InvalidArgumentError(
              absl::StrCat("sweep: unknown field '", key, "'"));
        }
        if (scn.instance && key != "epsilon") {
          return absl::InvalidArgumentError(
              "with an injected instance only epsilon can be swept");
        }
        if (auto st = ApplyPointField(p, key, value); !st.ok()) return st;
      }
      scn.sweep.push_back(p);
    }
  }

  for (const ScenarioPoint& p : scn.Points()) {
    if (scn.instance) {
      if (auto st = scn.instance->config.WithEpsilon(p.epsilon).status();
          !st.ok()) {
        return st;
      }
    } else if (auto st = ValidatePoint(p); !st.ok()) {
      return st;
    }
  }
  return scn;
}

absl::StatusOr<Scenario> ReadScenarioFile(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  json doc = json::parse(*text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("scenario is not valid JSON");
  }
  return ScenarioFromJson(
      doc, std::filesystem::path(path).parent_path().string().empty()
               ? "."
               : std::filesystem::path(path).parent_path().string());
}

absl::StatusOr<Scenario> PresetScenario(const std::string& name) {
  Scenario scn;
  if (name == "desk") {
    scn.mechanisms = {{MechanismKind::kDpca, 0},
                      {MechanismKind::kDpcaM, 2},
                      {MechanismKind::kDpcaS, 0},
                      {MechanismKind::kBasic, 0}};
    for (double eps : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      ScenarioPoint p = scn.base;
      p.epsilon = eps;
      scn.sweep.push_back(p);
    }
    return scn;
  }
  if (name == "full-small") {
    scn.base.n = 100;
    scn.mechanisms = {{MechanismKind::kDpca, 0}, {MechanismKind::kBasic, 0}};
    for (int m = 2; m <= 6; ++m) {
      ScenarioPoint p = scn.base;
      p.m = m;
      scn.sweep.push_back(p);
    }
    return scn;
  }
  if (name == "full-practical") {
    scn.base.m = 20;
    scn.base.v_max = 100;
    scn.base.k_min = 300;
    scn.base.k_max = 400;
    scn.mechanisms = {{MechanismKind::kDpcaS, 0},
                      {MechanismKind::kDpcaM, 2},
                      {MechanismKind::kDpcaM, 3},
                      {MechanismKind::kBasic, 0}};
    for (int n = 150; n <= 350; n += 50) {
      ScenarioPoint p = scn.base;
      p.n = n;
      scn.sweep.push_back(p);
    }
    return scn;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown preset '", name, "' (expected desk, full-small, full-practical)"));
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = seed;
  SplitMix(state);
  state ^= a * 0xd1b54a32d192ed03ULL;
  SplitMix(state);
  state ^= b * 0x8cb92ba72f3d8dd7ULL;
  return SplitMix(state);
}

RandomOrderKey TrialOrderKey(std::uint64_t seed, int trial) {
  return RandomOrderKey{
      DeriveSeed(seed, static_cast<std::uint64_t>(trial), kOrderKeyStream)};
}

absl::StatusOr<Instance> Generate(const ScenarioPoint& p, std::uint64_t seed,
                                  int trial) {
  if (auto st = ValidatePoint(p); !st.ok()) return st;
  auto config =
      AuctionConfig::Create(p.q_max, p.v_min, p.v_max, p.grid_step, p.epsilon);
  if (!config.ok()) return config.status();
  Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(trial), kGenerateStream));

  std::vector<int> supply(p.m);
  for (int& k : supply) k = UniformInt(rng, p.k_min, p.k_max);
  auto catalog = VmCatalog::Create(std::move(supply));
  if (!catalog.ok()) return catalog.status();

  std::vector<BidProfile> bids;
  bids.reserve(p.n);
  std::vector<int> demands(p.m);
  std::vector<Ticks> unit(p.m);
  for (int j = 0; j < p.n; ++j) {
    bool any = false;
    while (!any) {
      for (int i = 0; i < p.m; ++i) {
        const bool interested = UniformUnit(rng) < p.interest_probability;
        demands[i] = interested ? UniformInt(rng, 0, p.q_max) : 0;
        unit[i] = demands[i] > 0
                      ? config->GridPrice(UniformInt(rng, 0, config->grid_size() - 1))
                      : 0;
        any = any || demands[i] > 0;
      }
    }
    auto bid = BidProfile::Create(demands, unit, *config);
    if (!bid.ok()) return bid.status();
    bids.push_back(std::move(*bid));
  }
  return Instance::Create(std::move(*catalog), std::move(*config),
                          std::move(bids));
}

absl::StatusOr<TrialMetrics> RunTrial(const MechanismSpec& spec,
                                      const Instance& instance,
                                      RandomOrderKey key, std::uint64_t seed,
                                      const MechanismOptions& options) {
  Rng rng(seed);
  const auto start = std::chrono::steady_clock::now();
  auto result = RunMechanism(spec, instance, key, rng, options);
  const auto stop = std::chrono::steady_clock::now();
  if (!result.ok()) return result.status();
  TrialMetrics metrics;
  metrics.revenue = result->outcome.revenue;
  metrics.user_satisfaction =
      static_cast<double>(result->outcome.winners.size()) / instance.users();
  metrics.running_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return metrics;
}

absl::StatusOr<std::vector<ExperimentRow>> RunExperiment(
    const Scenario& scenario, const ExperimentOptions& options) {
  const MechanismOptions mech_options{scenario.max_space, options.execution};
  const std::size_t mech_count = scenario.mechanisms.size();
  std::vector<ExperimentRow> rows;

  for (const ScenarioPoint& point : scenario.Points()) {
    // metrics[trial * mech_count + mech]
    std::vector<TrialMetrics> metrics(scenario.trials * mech_count);
    std::vector<absl::Status> errors(scenario.trials);
    std::vector<Instance> shape;  // first trial's instance, for the row header

    auto run_trial = [&](int trial) -> absl::Status {
      absl::StatusOr<Instance> instance =
          scenario.instance
              ? [&]() -> absl::StatusOr<Instance> {
                  auto config =
                      scenario.instance->config.WithEpsilon(point.epsilon);
                  if (!config.ok()) return config.status();
                  Instance copy = *scenario.instance;
                  copy.config = *config;
                  return copy;
                }()
              : Generate(point, scenario.seed, trial);
      if (!instance.ok()) return instance.status();
      const RandomOrderKey key = TrialOrderKey(scenario.seed, trial);
      const std::uint64_t mech_seed = DeriveSeed(
          scenario.seed, static_cast<std::uint64_t>(trial), kMechanismStream);
      for (std::size_t k = 0; k < mech_count; ++k) {
        auto m = RunTrial(scenario.mechanisms[k], *instance, key, mech_seed,
                          mech_options);
        if (!m.ok()) return m.status();
        metrics[trial * mech_count + k] = *m;
      }
      if (trial == 0) shape.push_back(std::move(*instance));
      return absl::OkStatus();
    };

    if (options.parallel_trials) {
      // Trial 0 first so `shape` is written once, outside the parallel loop.
      errors[0] = run_trial(0);
#pragma omp parallel for schedule(dynamic)
      for (int trial = 1; trial < scenario.trials; ++trial) {
        errors[trial] = run_trial(trial);
      }
    } else {
      for (int trial = 0; trial < scenario.trials; ++trial) {
        errors[trial] = run_trial(trial);
        if (!errors[trial].ok()) break;
      }
    }
    for (const absl::Status& st : errors) {
      if (!st.ok()) return st;
    }

    const Instance& first = shape.front();
    for (std::size_t k = 0; k < mech_count; ++k) {
      ExperimentRow row;
      row.point = point;
      if (scenario.instance) {
        const AuctionConfig& c = first.config;
        row.point.q_max = c.q_max();
        row.point.v_min = c.v_min();
        row.point.v_max = c.v_max();
        row.point.grid_step = c.grid_step();
      }
      row.n = first.users();
      row.m = first.types();
      row.k_min = scenario.instance ? first.catalog.k_min() : point.k_min;
      row.k_max = scenario.instance ? first.catalog.k_max() : point.k_max;
      row.mechanism = scenario.mechanisms[k];
      for (int trial = 0; trial < scenario.trials; ++trial) {
        const TrialMetrics& t = metrics[trial * mech_count + k];
        row.mean.revenue += t.revenue;
        row.mean.user_satisfaction += t.user_satisfaction;
        row.mean.running_time_ms += t.running_time_ms;
      }
      row.mean.revenue /= scenario.trials;
      row.mean.user_satisfaction /= scenario.trials;
      row.mean.running_time_ms /= scenario.trials;
      rows.push_back(row);
    }
  }
  return rows;
}

absl::StatusOr<MechanismResult> Solve(const Instance& instance,
                                      const SolveRequest& request) {
  Instance run = instance;
  if (request.epsilon) {
    auto config = instance.config.WithEpsilon(*request.epsilon);
    if (!config.ok()) return config.status();
    run.config = *config;
  }
  const RandomOrderKey key{DeriveSeed(request.seed, 0, kOrderKeyStream)};
  Rng rng(DeriveSeed(request.seed, 0, kMechanismStream));
  return RunMechanism(request.mechanism, run, key, rng,
                      MechanismOptions{request.max_space, Execution::kParallel});
}

absl::StatusOr<std::string> SolveJson(const Instance& instance,
                                      const SolveRequest& request) {
  auto result = Solve(instance, request);
  if (!result.ok()) return result.status();
  return ResultToJson(*result, instance.config).dump(2) + "\n";
}

std::string ToCsv(const Scenario& scenario,
                  const std::vector<ExperimentRow>& rows, bool include_time) {
  std::string out =
      "n,m,k_min,k_max,q_max,v_min,v_max,grid_step,epsilon,"
      "interest_probability,trials,seed,mechanism,group_size,"
      "mean_revenue,mean_satisfaction";
  out += include_time ? ",mean_time_ms\n" : "\n";
  for (const ExperimentRow& r : rows) {
    const ScenarioPoint& p = r.point;
    absl::StrAppend(
        &out, r.n, ",", r.m, ",", r.k_min, ",", r.k_max, ",", p.q_max, ",",
        Shortest(p.v_min), ",", Shortest(p.v_max), ",", Shortest(p.grid_step),
        ",", Shortest(p.epsilon), ",",
        scenario.instance ? std::string("") : Shortest(p.interest_probability),
        ",", scenario.trials, ",", scenario.seed, ",",
        MechanismName(r.mechanism.kind), ",", r.mechanism.group_size, ",",
        Fixed(r.mean.revenue, 6), ",", Fixed(r.mean.user_satisfaction, 6));
    if (include_time) absl::StrAppend(&out, ",", Fixed(r.mean.running_time_ms, 4));
    out += "\n";
  }
  return out;
}

}  // namespace dpca
