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

#include "dpca/allocation.h"

#include <algorithm>

namespace dpca {
namespace {

// splitmix64 finalizer.
std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CandidateSet SelectCandidates(std::span<const BidProfile> bids,
                              std::span<const Ticks> rho) {
  CandidateSet out;
  for (std::size_t j = 0; j < bids.size(); ++j) {
    if (TotalBid(bids[j]) >= ClearingPriceUnchecked(bids[j], rho)) {
      out.push_back(static_cast<int>(j));
    }
  }
  return out;
}

std::uint64_t PriceStreamKey(RandomOrderKey key, std::span<const Ticks> rho) {
  std::uint64_t h = Mix(key.seed ^ 0x243f6a8885a308d3ULL);
  for (Ticks p : rho) h = Mix(h ^ static_cast<std::uint64_t>(p));
  return Mix(h ^ static_cast<std::uint64_t>(rho.size()));
}

std::uint64_t UserPriority(std::uint64_t stream_key, int user) {
  return Mix(stream_key ^ Mix(static_cast<std::uint64_t>(user) + 1));
}

std::vector<int> OrderCandidates(RandomOrderKey key, std::span<const Ticks> rho,
                                 CandidateSet candidates) {
  const std::uint64_t stream = PriceStreamKey(key, rho);
  std::vector<std::pair<std::uint64_t, int>> ranked;
  ranked.reserve(candidates.size());
  for (int j : candidates) ranked.emplace_back(UserPriority(stream, j), j);
  std::sort(ranked.begin(), ranked.end());
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    candidates[k] = ranked[k].second;
  }
  return candidates;
}

std::vector<int> Allocate(std::span<const int> ordered,
                          std::span<const BidProfile> bids,
                          const VmCatalog& catalog) {
  const int m = catalog.types();
  std::vector<int> used(m, 0);
  std::vector<int> winners;
  for (int j : ordered) {
    const BidProfile& bid = bids[j];
    bool fits = true;
    for (int i = 0; i < m && fits; ++i) {
      fits = used[i] + bid.demand(i) <= catalog.supply(i);
    }
    if (!fits) continue;
    for (int i = 0; i < m; ++i) used[i] += bid.demand(i);
    winners.push_back(j);
  }
  std::sort(winners.begin(), winners.end());
  return winners;
}

Ticks Revenue(std::span<const int> winners, std::span<const BidProfile> bids,
              std::span<const Ticks> rho) {
  Ticks total = 0;
  for (int j : winners) total += ClearingPriceUnchecked(bids[j], rho);
  return total;
}

PriceEvaluation EvaluatePrice(std::span<const BidProfile> bids,
                              const VmCatalog& catalog, RandomOrderKey key,
                              std::span<const Ticks> rho) {
  const std::vector<int> ordered =
      OrderCandidates(key, rho, SelectCandidates(bids, rho));
  PriceEvaluation eval;
  eval.winners = Allocate(ordered, bids, catalog);
  eval.revenue = Revenue(eval.winners, bids, rho);
  return eval;
}

Ticks EvaluateRevenue(std::span<const BidProfile> bids,
                      const VmCatalog& catalog, RandomOrderKey key,
                      std::span<const Ticks> rho, AllocationScratch& scratch) {
  const std::uint64_t stream = PriceStreamKey(key, rho);
  scratch.ranked.clear();
  for (std::size_t j = 0; j < bids.size(); ++j) {
    if (TotalBid(bids[j]) >= ClearingPriceUnchecked(bids[j], rho)) {
      const int user = static_cast<int>(j);
      scratch.ranked.emplace_back(UserPriority(stream, user), user);
    }
  }
  std::sort(scratch.ranked.begin(), scratch.ranked.end());

  const int m = catalog.types();
  scratch.used.assign(m, 0);
  Ticks revenue = 0;
  for (const auto& [priority, j] : scratch.ranked) {
    const BidProfile& bid = bids[j];
    bool fits = true;
    for (int i = 0; i < m && fits; ++i) {
      fits = scratch.used[i] + bid.demand(i) <= catalog.supply(i);
    }
    if (!fits) continue;
    for (int i = 0; i < m; ++i) scratch.used[i] += bid.demand(i);
    revenue += ClearingPriceUnchecked(bid, rho);
  }
  return revenue;
}

}  // namespace dpca
