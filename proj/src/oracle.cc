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

#include "dpca/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace dpca::oracle {
namespace {

absl::StatusOr<std::uint64_t> CheckedSpace(int grid, int dims,
                                           std::uint64_t cap) {
  std::uint64_t size = 1;
  for (int d = 0; d < dims; ++d) {
    size *= static_cast<std::uint64_t>(grid);
    if (size > cap) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "oracle space ", grid, "^", dims, " exceeds cap ", cap));
    }
  }
  return size;
}

// Advances `digits` (grid indices) like an odometer, last digit fastest.
bool NextDigits(std::vector<int>& digits, int grid) {
  for (std::size_t d = digits.size(); d-- > 0;) {
    if (++digits[d] < grid) return true;
    digits[d] = 0;
  }
  return false;
}

std::vector<long double> Softmax(std::span<const Ticks> scores,
                                 long double epsilon, long double sensitivity) {
  const Ticks top = *std::max_element(scores.begin(), scores.end());
  std::vector<long double> w(scores.size());
  long double total = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    w[k] = std::exp(epsilon * static_cast<long double>(scores[k] - top) /
                    (2.0L * sensitivity));
    total += w[k];
  }
  for (auto& x : w) x /= total;
  return w;
}

// Partial revenue over the first `covered` types, supply ignored.
Ticks PartialRevenue(const Instance& instance, std::span<const Ticks> rho,
                     int covered) {
  Ticks total = 0;
  for (const BidProfile& bid : instance.bids) {
    Ticks b = 0;
    Ticks p = 0;
    for (int i = 0; i < covered; ++i) {
      b += bid.demand(i) * bid.unit_bid(i);
      p += bid.demand(i) * rho[i];
    }
    if (b >= p) total += p;
  }
  return total;
}

struct SequentialWalk {
  const Instance& instance;
  RandomOrderKey key;
  int group_size;
  int groups;
  std::vector<double>& out;

  void Visit(std::vector<Ticks>& prefix, long double mass) {
    const AuctionConfig& config = instance.config;
    const int m = instance.types();
    const int first = static_cast<int>(prefix.size());
    const int count = std::min(group_size, m - first);
    const int covered = first + count;
    const int grid = config.grid_size();

    std::vector<std::vector<Ticks>> completions;
    std::vector<Ticks> scores;
    std::vector<int> digits(count, 0);
    do {
      std::vector<Ticks> rho = prefix;
      for (int d : digits) rho.push_back(config.GridPrice(d));
      scores.push_back(covered == m
                           ? EvaluatePrice(instance.bids, instance.catalog, key,
                                           rho)
                                 .revenue
                           : PartialRevenue(instance, rho, covered));
      completions.push_back(std::move(rho));
    } while (NextDigits(digits, grid));

    const long double sensitivity = static_cast<long double>(covered) *
                                    config.q_max() * config.max_ticks();
    const std::vector<long double> p = Softmax(
        scores, static_cast<long double>(config.epsilon()) / groups,
        sensitivity);
    for (std::size_t k = 0; k < completions.size(); ++k) {
      if (covered == m) {
        out[PriceIndex(completions[k], config)] +=
            static_cast<double>(mass * p[k]);
      } else {
        Visit(completions[k], mass * p[k]);
      }
    }
  }
};

}  // namespace

PriceVector PriceDistribution::PriceAt(std::uint64_t index,
                                       const AuctionConfig& config) const {
  PriceVector rho;
  rho.prices.assign(types, 0);
  const auto grid = static_cast<std::uint64_t>(config.grid_size());
  for (int d = types; d-- > 0;) {
    rho.prices[d] = config.GridPrice(static_cast<int>(index % grid));
    index /= grid;
  }
  return rho;
}

std::uint64_t PriceIndex(std::span<const Ticks> rho,
                         const AuctionConfig& config) {
  std::uint64_t index = 0;
  for (Ticks p : rho) {
    index = index * static_cast<std::uint64_t>(config.grid_size()) +
            static_cast<std::uint64_t>(p - config.min_ticks());
  }
  return index;
}

absl::StatusOr<std::vector<Ticks>> RevenueTable(const Instance& instance,
                                                RandomOrderKey key,
                                                std::uint64_t max_space) {
  const AuctionConfig& config = instance.config;
  auto size = CheckedSpace(config.grid_size(), instance.types(), max_space);
  if (!size.ok()) return size.status();
  std::vector<Ticks> table(*size);
  std::vector<int> digits(instance.types(), 0);
  std::vector<Ticks> rho(instance.types());
  std::uint64_t index = 0;
  do {
    for (std::size_t d = 0; d < digits.size(); ++d) {
      rho[d] = config.GridPrice(digits[d]);
    }
    table[index++] =
        EvaluatePrice(instance.bids, instance.catalog, key, rho).revenue;
  } while (NextDigits(digits, config.grid_size()));
  return table;
}

absl::StatusOr<PriceDistribution> ExactDistribution(const Instance& instance,
                                                    RandomOrderKey key,
                                                    std::uint64_t max_space) {
  auto table = RevenueTable(instance, key, max_space);
  if (!table.ok()) return table.status();
  const AuctionConfig& config = instance.config;
  const long double sensitivity = static_cast<long double>(instance.types()) *
                                  config.q_max() * config.max_ticks();
  const std::vector<long double> p =
      Softmax(*table, config.epsilon(), sensitivity);
  PriceDistribution dist;
  dist.types = instance.types();
  dist.probabilities.assign(p.begin(), p.end());
  return dist;
}

absl::StatusOr<PriceDistribution> ExactDistributionSequential(
    const Instance& instance, RandomOrderKey key, int group_size,
    std::uint64_t max_space) {
  const int m = instance.types();
  if (group_size < 1 || group_size > m) {
    return absl::InvalidArgumentError("group size out of range");
  }
  auto size = CheckedSpace(instance.config.grid_size(), m, max_space);
  if (!size.ok()) return size.status();
  PriceDistribution dist;
  dist.types = m;
  dist.probabilities.assign(*size, 0.0);
  const int groups = (m + group_size - 1) / group_size;
  SequentialWalk walk{instance, key, group_size, groups, dist.probabilities};
  std::vector<Ticks> prefix;
  walk.Visit(prefix, 1.0L);
  return dist;
}

double MaxPointwiseRatio(std::span<const double> a, std::span<const double> b) {
  double worst = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0 && b[k] == 0) continue;
    if (a[k] == 0 || b[k] == 0) return std::numeric_limits<double>::infinity();
    worst = std::max({worst, a[k] / b[k], b[k] / a[k]});
  }
  return worst;
}

absl::StatusOr<double> DpRatio(const Instance& instance,
                               const Instance& neighbor, RandomOrderKey key,
                               int group_size) {
  if (instance.users() != neighbor.users()) {
    return absl::InvalidArgumentError("neighbors must have the same users");
  }
  int differing = 0;
  for (int j = 0; j < instance.users(); ++j) {
    differing += !(instance.bids[j] == neighbor.bids[j]);
  }
  if (differing > 1) {
    return absl::InvalidArgumentError("profiles differ in more than one bid");
  }
  auto a = ExactDistributionSequential(instance, key, group_size);
  if (!a.ok()) return a.status();
  auto b = ExactDistributionSequential(neighbor, key, group_size);
  if (!b.ok()) return b.status();
  return MaxPointwiseRatio(a->probabilities, b->probabilities);
}

absl::StatusOr<Ticks> OptFixedR(const Instance& instance, RandomOrderKey key,
                                std::uint64_t max_space) {
  auto table = RevenueTable(instance, key, max_space);
  if (!table.ok()) return table.status();
  return *std::max_element(table->begin(), table->end());
}

absl::StatusOr<Ticks> OptGlobal(const Instance& instance,
                                std::uint64_t max_space) {
  if (instance.users() > 7) {
    return absl::InvalidArgumentError("global optimum needs at most 7 users");
  }
  const AuctionConfig& config = instance.config;
  auto size = CheckedSpace(config.grid_size(), instance.types(), max_space);
  if (!size.ok()) return size.status();
  Ticks best = 0;
  std::vector<int> digits(instance.types(), 0);
  std::vector<Ticks> rho(instance.types());
  do {
    for (std::size_t d = 0; d < digits.size(); ++d) {
      rho[d] = config.GridPrice(digits[d]);
    }
    std::vector<int> order = SelectCandidates(instance.bids, rho);
    do {
      const std::vector<int> winners =
          Allocate(order, instance.bids, instance.catalog);
      best = std::max(best, Revenue(winners, instance.bids, rho));
    } while (std::next_permutation(order.begin(), order.end()));
  } while (NextDigits(digits, config.grid_size()));
  return best;
}

double ExpectedRevenue(const Instance& instance, RandomOrderKey key,
                       const PriceDistribution& dist) {
  long double total = 0;
  for (std::uint64_t k = 0; k < dist.probabilities.size(); ++k) {
    if (dist.probabilities[k] == 0) continue;
    const PriceVector rho = dist.PriceAt(k, instance.config);
    const Ticks rev =
        EvaluatePrice(instance.bids, instance.catalog, key, rho.prices).revenue;
    total += static_cast<long double>(dist.probabilities[k]) * rev;
  }
  return static_cast<double>(total) * instance.config.grid_step();
}

absl::StatusOr<double> ExpectedRevenue(const Instance& instance,
                                       RandomOrderKey key) {
  auto dist = ExactDistribution(instance, key);
  if (!dist.ok()) return dist.status();
  return ExpectedRevenue(instance, key, *dist);
}

ExpectedMetrics ExpectedOutcomeMetrics(const Instance& instance,
                                       RandomOrderKey key,
                                       const PriceDistribution& dist) {
  long double revenue = 0;
  long double winners = 0;
  for (std::uint64_t k = 0; k < dist.probabilities.size(); ++k) {
    if (dist.probabilities[k] == 0) continue;
    const PriceVector rho = dist.PriceAt(k, instance.config);
    const PriceEvaluation eval =
        EvaluatePrice(instance.bids, instance.catalog, key, rho.prices);
    revenue += static_cast<long double>(dist.probabilities[k]) * eval.revenue;
    winners +=
        static_cast<long double>(dist.probabilities[k]) * eval.winners.size();
  }
  return {static_cast<double>(revenue) * instance.config.grid_step(),
          static_cast<double>(winners) / instance.users()};
}

Ticks UtilityAtPrice(const Instance& reported, RandomOrderKey key,
                     std::span<const Ticks> rho, int user,
                     const BidProfile& truthful) {
  const PriceEvaluation eval =
      EvaluatePrice(reported.bids, reported.catalog, key, rho);
  if (!std::binary_search(eval.winners.begin(), eval.winners.end(), user)) {
    return 0;
  }
  // Single-minded valuation: the true bundle is worth its total bid when the
  // reported bundle covers it, and nothing otherwise.
  const BidProfile& bid = reported.bids[user];
  bool covers = true;
  for (int i = 0; i < bid.types(); ++i) {
    covers = covers && bid.demand(i) >= truthful.demand(i);
  }
  const Ticks value = covers ? TotalBid(truthful) : 0;
  return value - ClearingPriceUnchecked(bid, rho);
}

double ExpectedUtility(const Instance& reported, RandomOrderKey key,
                       const PriceDistribution& dist, int user,
                       const BidProfile& truthful) {
  long double total = 0;
  for (std::uint64_t k = 0; k < dist.probabilities.size(); ++k) {
    if (dist.probabilities[k] == 0) continue;
    const PriceVector rho = dist.PriceAt(k, reported.config);
    total += static_cast<long double>(dist.probabilities[k]) *
             UtilityAtPrice(reported, key, rho.prices, user, truthful);
  }
  return static_cast<double>(total) * reported.config.grid_step();
}

double OptSandwichCoefficient(const Instance& instance) {
  const int k_max = instance.catalog.k_max();
  if (k_max == 0) return 0;
  return static_cast<double>(instance.catalog.k_min() -
                             instance.config.q_max() + 1) /
         k_max;
}

double ExpectedRevenueLowerBound(const Instance& instance, double opt_money) {
  const AuctionConfig& config = instance.config;
  const double sensitivity =
      static_cast<double>(instance.types()) * config.q_max() * config.v_max();
  const double eps = config.epsilon();
  const double space =
      std::pow(static_cast<double>(config.grid_size()), instance.types());
  return OptSandwichCoefficient(instance) * opt_money -
         (6.0 * sensitivity / eps) *
             std::log(std::numbers::e + eps * space * opt_money /
                                            (2.0 * sensitivity));
}

}  // namespace dpca::oracle
