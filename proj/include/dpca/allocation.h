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

#ifndef DPCA_ALLOCATION_H_
#define DPCA_ALLOCATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "dpca/core.h"

namespace dpca {

// Public randomness that fixes the candidate order for every price vector.
// The order at price vector rho is obtained by sorting users by a keyed
// pseudorandom priority derived from (seed, rho, user), so the relative
// order of any two users at a given rho never depends on who else is a
// candidate.
struct RandomOrderKey {
  std::uint64_t seed = 0;
  friend bool operator==(RandomOrderKey, RandomOrderKey) = default;
};

// Candidate users in ascending index order.
using CandidateSet = std::vector<int>;

// Users whose total bid covers their clearing price at `rho` (ties included).
CandidateSet SelectCandidates(std::span<const BidProfile> bids,
                              std::span<const Ticks> rho);

// Stream key for one price vector; an input to UserPriority.
std::uint64_t PriceStreamKey(RandomOrderKey key, std::span<const Ticks> rho);
std::uint64_t UserPriority(std::uint64_t stream_key, int user);

// Ranks `candidates` by the order the key assigns at `rho`.
std::vector<int> OrderCandidates(RandomOrderKey key, std::span<const Ticks> rho,
                                 CandidateSet candidates);

// Greedy scan in the given order: a user wins iff its whole bundle still fits
// within the remaining supply. Returns winners in ascending index order.
std::vector<int> Allocate(std::span<const int> ordered,
                          std::span<const BidProfile> bids,
                          const VmCatalog& catalog);

// Sum of clearing prices over the winners.
Ticks Revenue(std::span<const int> winners, std::span<const BidProfile> bids,
              std::span<const Ticks> rho);

struct PriceEvaluation {
  std::vector<int> winners;
  Ticks revenue = 0;
};

// Candidate selection, ordering, allocation and revenue at one price vector.
PriceEvaluation EvaluatePrice(std::span<const BidProfile> bids,
                              const VmCatalog& catalog, RandomOrderKey key,
                              std::span<const Ticks> rho);

// Reusable buffers for the revenue-only path used by hot loops.
struct AllocationScratch {
  std::vector<std::pair<std::uint64_t, int>> ranked;
  std::vector<int> used;
};

// Same revenue as EvaluatePrice(...).revenue without materializing winners.
Ticks EvaluateRevenue(std::span<const BidProfile> bids,
                      const VmCatalog& catalog, RandomOrderKey key,
                      std::span<const Ticks> rho, AllocationScratch& scratch);

}  // namespace dpca

#endif  // DPCA_ALLOCATION_H_
