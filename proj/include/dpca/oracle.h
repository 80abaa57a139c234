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

// Brute-force ground truth for small instances. Everything here enumerates
// the full price space and computes probabilities in extended precision
// without going through the mechanism scoring kernels or the sampler.

#ifndef DPCA_ORACLE_H_
#define DPCA_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpca/allocation.h"
#include "dpca/core.h"

namespace dpca::oracle {

inline constexpr std::uint64_t kDefaultMaxSpace = 1'000'000;

// Probability of every price vector, indexed in canonical order (mixed
// radix over the grid, type 0 most significant).
struct PriceDistribution {
  int types = 0;
  std::vector<double> probabilities;

  PriceVector PriceAt(std::uint64_t index, const AuctionConfig& config) const;
};

// Canonical index of a full price vector.
std::uint64_t PriceIndex(std::span<const Ticks> rho,
                         const AuctionConfig& config);

// Allocated revenue at every price vector, canonical order.
absl::StatusOr<std::vector<Ticks>> RevenueTable(
    const Instance& instance, RandomOrderKey key,
    std::uint64_t max_space = kDefaultMaxSpace);

// Joint selection over the whole price space.
absl::StatusOr<PriceDistribution> ExactDistribution(
    const Instance& instance, RandomOrderKey key,
    std::uint64_t max_space = kDefaultMaxSpace);

// Stagewise selection with groups of `group_size` types, marginalized over
// every prefix. group_size = m reproduces ExactDistribution.
absl::StatusOr<PriceDistribution> ExactDistributionSequential(
    const Instance& instance, RandomOrderKey key, int group_size,
    std::uint64_t max_space = kDefaultMaxSpace);

// max over outputs of max(a/b, b/a); infinity if exactly one side is zero,
// 1 where both are zero.
double MaxPointwiseRatio(std::span<const double> a, std::span<const double> b);

// Pointwise ratio between the output distributions on two neighboring
// inputs, for the grouped mechanism with `group_size` (m = joint).
absl::StatusOr<double> DpRatio(const Instance& instance,
                               const Instance& neighbor, RandomOrderKey key,
                               int group_size);

// max over rho of the revenue at the fixed key.
absl::StatusOr<Ticks> OptFixedR(const Instance& instance, RandomOrderKey key,
                                std::uint64_t max_space = kDefaultMaxSpace);

// max over rho and over every ordering of each candidate set. n <= 7.
absl::StatusOr<Ticks> OptGlobal(const Instance& instance,
                                std::uint64_t max_space = kDefaultMaxSpace);

// Expected revenue (money) under a distribution from this module.
double ExpectedRevenue(const Instance& instance, RandomOrderKey key,
                       const PriceDistribution& dist);
absl::StatusOr<double> ExpectedRevenue(const Instance& instance,
                                       RandomOrderKey key);

struct ExpectedMetrics {
  double revenue = 0;       // money
  double satisfaction = 0;  // expected winners / n
};

// Both metrics under `dist` in one pass over its support.
ExpectedMetrics ExpectedOutcomeMetrics(const Instance& instance,
                                       RandomOrderKey key,
                                       const PriceDistribution& dist);

// Expected utility (money) of `user` whose true valuation is `truthful`
// when the submitted profile is `reported.bids[user]`; see UtilityAtPrice.
double ExpectedUtility(const Instance& reported, RandomOrderKey key,
                       const PriceDistribution& dist, int user,
                       const BidProfile& truthful);

// Utility (ticks) at one fixed price vector. `truthful` is single-minded:
// its value counts only if the reported bundle contains the true one.
Ticks UtilityAtPrice(const Instance& reported, RandomOrderKey key,
                     std::span<const Ticks> rho, int user,
                     const BidProfile& truthful);

// (K_min - q_max + 1) / K_max; 0 when K_max = 0.
double OptSandwichCoefficient(const Instance& instance);

// Lower bound on expected revenue (money) from the revenue guarantee:
// c * OPT - (6 D / eps) ln(e + eps |space| OPT / (2 D)), D = m q_max v_max.
double ExpectedRevenueLowerBound(const Instance& instance, double opt_money);

}  // namespace dpca::oracle

#endif  // DPCA_ORACLE_H_
