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

#include "dpca/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpca {
namespace {

AuctionOutcome OutcomeAtPrice(const Instance& instance, RandomOrderKey key,
                              PriceVector rho) {
  const PriceEvaluation eval =
      EvaluatePrice(instance.bids, instance.catalog, key, rho.prices);
  AuctionOutcome outcome;
  const int n = instance.users();
  outcome.allocation.assign(n, 0);
  outcome.payments.assign(n, 0.0);
  outcome.winners = eval.winners;
  for (int j : eval.winners) {
    outcome.allocation[j] = 1;
    outcome.payments[j] = instance.config.ToMoney(
        ClearingPriceUnchecked(instance.bids[j], rho.prices));
  }
  outcome.revenue = instance.config.ToMoney(eval.revenue);
  outcome.clearing_prices = std::move(rho);
  return outcome;
}

absl::Status SpaceTooLarge(const AuctionConfig& config, int dims,
                           std::uint64_t cap) {
  return absl::ResourceExhaustedError(absl::StrCat(
      "price space of ", config.grid_size(), "^", dims, " = ",
      std::pow(static_cast<double>(config.grid_size()), dims),
      " vectors exceeds the enumeration cap of ", cap));
}

// Runs one exponential mechanism per group of the plan. Every group but the
// last scores partial revenue over the types priced so far; the last group
// scores allocated revenue over all types.
absl::StatusOr<MechanismResult> RunGrouped(const Instance& instance,
                                           RandomOrderKey key, Rng& rng,
                                           const GroupingPlan& plan,
                                           const MechanismOptions& options) {
  const AuctionConfig& config = instance.config;
  const int m = instance.types();
  const double stage_epsilon = config.epsilon() / plan.group_count();

  // Check every stage up front so a failure consumes no randomness.
  std::vector<std::uint64_t> sizes;
  for (const auto& [first, count] : plan.groups()) {
    auto size = SpaceSize(config.grid_size(), count, options.max_space);
    if (!size) return SpaceTooLarge(config, count, options.max_space);
    sizes.push_back(*size);
  }

  MechanismResult result;
  std::vector<Ticks> prices;
  prices.reserve(m);
  for (int g = 0; g < plan.group_count(); ++g) {
    const auto [first, count] = plan.groups()[g];
    const int covered = first + count;
    BlockRequest block{prices, count, sizes[g]};
    const std::vector<Ticks> revenue =
        ScoreBlock(instance, key, block, options.execution);

    const double sensitivity_ticks = static_cast<double>(covered) *
                                     config.q_max() *
                                     static_cast<double>(config.max_ticks());
    const std::vector<double> scores(revenue.begin(), revenue.end());
    const std::vector<double> probabilities =
        ExponentialWeights(scores, sensitivity_ticks, stage_epsilon);
    const std::size_t chosen = SampleIndex(probabilities, rng);

    std::vector<Ticks> group_prices(count);
    DecodeBlockIndex(chosen, config, group_prices);
    prices.insert(prices.end(), group_prices.begin(), group_prices.end());
    result.stages.push_back(StageBudget{
        first, count, stage_epsilon,
        static_cast<double>(covered) * config.q_max() * config.v_max()});
  }
  result.outcome = OutcomeAtPrice(instance, key, PriceVector{prices});
  return result;
}

// a ranks ahead of b under the average-bid-per-instance ordering.
bool RanksAhead(const BidProfile& a, int ia, const BidProfile& b, int ib) {
  const __int128 lhs =
      static_cast<__int128>(TotalBid(a)) * static_cast<__int128>(b.total_demand());
  const __int128 rhs =
      static_cast<__int128>(TotalBid(b)) * static_cast<__int128>(a.total_demand());
  if (lhs != rhs) return lhs > rhs;
  return ia < ib;
}

}  // namespace

absl::StatusOr<GroupingPlan> GroupingPlan::Create(int types, int group_size) {
  if (types < 1) return absl::InvalidArgumentError("need at least one type");
  if (group_size < 1 || group_size > types) {
    return absl::InvalidArgumentError(absl::StrCat(
        "group size must lie in [1, ", types, "], got ", group_size));
  }
  std::vector<std::pair<int, int>> groups;
  for (int first = 0; first < types; first += group_size) {
    groups.emplace_back(first, std::min(group_size, types - first));
  }
  return GroupingPlan(group_size, std::move(groups));
}

Ticks PartialBid(const BidProfile& bid, int l) {
  Ticks total = 0;
  for (int i = 0; i < l; ++i) total += bid.demand(i) * bid.unit_bid(i);
  return total;
}

Ticks PartialPrice(const BidProfile& bid, std::span<const Ticks> rho_prefix,
                   int l) {
  Ticks total = 0;
  for (int i = 0; i < l; ++i) total += bid.demand(i) * rho_prefix[i];
  return total;
}

absl::StatusOr<MechanismResult> RunDpca(const Instance& instance,
                                        RandomOrderKey key, Rng& rng,
                                        const MechanismOptions& options) {
  return RunDpcaM(instance, key, rng, instance.types(), options);
}

absl::StatusOr<MechanismResult> RunDpcaS(const Instance& instance,
                                         RandomOrderKey key, Rng& rng,
                                         const MechanismOptions& options) {
  return RunDpcaM(instance, key, rng, 1, options);
}

absl::StatusOr<MechanismResult> RunDpcaM(const Instance& instance,
                                         RandomOrderKey key, Rng& rng,
                                         int group_size,
                                         const MechanismOptions& options) {
  auto plan = GroupingPlan::Create(instance.types(), group_size);
  if (!plan.ok()) return plan.status();
  return RunGrouped(instance, key, rng, *plan, options);
}

MechanismResult RunBasic(const Instance& instance) {
  const int n = instance.users();
  const auto& bids = instance.bids;

  std::vector<int> ranking(n);
  for (int j = 0; j < n; ++j) ranking[j] = j;
  std::sort(ranking.begin(), ranking.end(), [&](int a, int b) {
    return RanksAhead(bids[a], a, bids[b], b);
  });

  MechanismResult result;
  AuctionOutcome& outcome = result.outcome;
  outcome.winners = Allocate(ranking, bids, instance.catalog);
  outcome.allocation.assign(n, 0);
  outcome.payments.assign(n, 0.0);
  for (int j : outcome.winners) outcome.allocation[j] = 1;

  std::vector<int> without;
  for (int j : outcome.winners) {
    without.clear();
    for (int u : ranking) {
      if (u != j) without.push_back(u);
    }
    std::vector<int> rerun = Allocate(without, bids, instance.catalog);
    std::vector<int> promoted(n, 0);
    for (int u : rerun) promoted[u] = 1;
    // The critical bidder is the highest-ranked original loser that wins
    // once j is gone.
    for (int u : without) {
      if (promoted[u] && !outcome.allocation[u]) {
        const double average =
            instance.config.ToMoney(TotalBid(bids[u])) / bids[u].total_demand();
        outcome.payments[j] = average * bids[j].total_demand();
        break;
      }
    }
  }
  for (int j : outcome.winners) outcome.revenue += outcome.payments[j];
  return result;
}

absl::StatusOr<MechanismSpec> ParseMechanism(std::string_view name,
                                             int group_size) {
  if (name == "dpca") return MechanismSpec{MechanismKind::kDpca, 0};
  if (name == "dpca-s") return MechanismSpec{MechanismKind::kDpcaS, 0};
  if (name == "basic") return MechanismSpec{MechanismKind::kBasic, 0};
  if (name == "dpca-m") {
    if (group_size < 1) {
      return absl::InvalidArgumentError("dpca-m requires a group size >= 1");
    }
    return MechanismSpec{MechanismKind::kDpcaM, group_size};
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", std::string(name), "' (expected dpca, dpca-s, dpca-m, basic)"));
}

std::string MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kDpca:
      return "dpca";
    case MechanismKind::kDpcaS:
      return "dpca-s";
    case MechanismKind::kDpcaM:
      return "dpca-m";
    case MechanismKind::kBasic:
      return "basic";
  }
  return "unknown";
}

absl::StatusOr<std::vector<double>> OutputDistribution(
    const MechanismSpec& spec, const Instance& instance, RandomOrderKey key,
    const MechanismOptions& options) {
  const int m = instance.types();
  int group_size = m;
  switch (spec.kind) {
    case MechanismKind::kDpca:
      break;
    case MechanismKind::kDpcaS:
      group_size = 1;
      break;
    case MechanismKind::kDpcaM:
      group_size = spec.group_size;
      break;
    case MechanismKind::kBasic:
      return absl::InvalidArgumentError("basic has no price distribution");
  }
  auto plan = GroupingPlan::Create(m, group_size);
  if (!plan.ok()) return plan.status();
  const AuctionConfig& config = instance.config;
  auto total = SpaceSize(config.grid_size(), m, options.max_space);
  if (!total) return SpaceTooLarge(config, m, options.max_space);
  const double stage_epsilon = config.epsilon() / plan->group_count();

  std::vector<double> out(*total, 0.0);
  std::vector<Ticks> prices;
  // Depth-first over prefixes; `index` is the canonical index of the prefix.
  auto visit = [&](auto&& self, int g, std::uint64_t index,
                   double mass) -> void {
    const auto [first, count] = plan->groups()[g];
    const int covered = first + count;
    const std::uint64_t size = *SpaceSize(config.grid_size(), count, *total);
    const std::vector<Ticks> revenue =
        ScoreBlock(instance, key, BlockRequest{prices, count, size},
                   options.execution);
    const std::vector<double> scores(revenue.begin(), revenue.end());
    const std::vector<double> p = ExponentialWeights(
        scores,
        static_cast<double>(covered) * config.q_max() *
            static_cast<double>(config.max_ticks()),
        stage_epsilon);
    std::vector<Ticks> group_prices(count);
    for (std::uint64_t k = 0; k < size; ++k) {
      const std::uint64_t child = index * size + k;
      if (g + 1 == plan->group_count()) {
        out[child] += mass * p[k];
        continue;
      }
      DecodeBlockIndex(k, config, group_prices);
      prices.insert(prices.end(), group_prices.begin(), group_prices.end());
      self(self, g + 1, child, mass * p[k]);
      prices.resize(first);
    }
  };
  visit(visit, 0, 0, 1.0);
  return out;
}

absl::StatusOr<MechanismResult> RunMechanism(const MechanismSpec& spec,
                                             const Instance& instance,
                                             RandomOrderKey key, Rng& rng,
                                             const MechanismOptions& options) {
  switch (spec.kind) {
    case MechanismKind::kDpca:
      return RunDpca(instance, key, rng, options);
    case MechanismKind::kDpcaS:
      return RunDpcaS(instance, key, rng, options);
    case MechanismKind::kDpcaM:
      return RunDpcaM(instance, key, rng, spec.group_size, options);
    case MechanismKind::kBasic:
      return RunBasic(instance);
  }
  return absl::InvalidArgumentError("unknown mechanism");
}

}  // namespace dpca
