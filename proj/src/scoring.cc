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

#include "dpca/scoring.h"

#include <cstdint>

namespace dpca {

std::optional<std::uint64_t> SpaceSize(int grid_size, int dims,
                                       std::uint64_t cap) {
  std::uint64_t size = 1;
  for (int d = 0; d < dims; ++d) {
    if (size > cap / static_cast<std::uint64_t>(grid_size)) return std::nullopt;
    size *= static_cast<std::uint64_t>(grid_size);
  }
  if (size > cap) return std::nullopt;
  return size;
}

void DecodeBlockIndex(std::uint64_t index, const AuctionConfig& config,
                      std::span<Ticks> out) {
  const auto radix = static_cast<std::uint64_t>(config.grid_size());
  for (std::size_t d = out.size(); d-- > 0;) {
    out[d] = config.GridPrice(static_cast<int>(index % radix));
    index /= radix;
  }
}

namespace {

// Per-thread evaluation state for one block.
class BlockScorer {
 public:
  BlockScorer(const Instance& instance, RandomOrderKey key,
              const BlockRequest& block)
      : instance_(instance),
        key_(key),
        prefix_len_(static_cast<int>(block.prefix.size())),
        covered_(prefix_len_ + block.group_len),
        rho_(covered_, 0) {
    for (int i = 0; i < prefix_len_; ++i) rho_[i] = block.prefix[i];
    if (covered_ < instance.types()) {
      const int n = instance.users();
      partial_bid_.resize(n);
      prefix_price_.resize(n);
      for (int j = 0; j < n; ++j) {
        const BidProfile& bid = instance.bids[j];
        Ticks b = 0;
        for (int i = 0; i < covered_; ++i) b += bid.demand(i) * bid.unit_bid(i);
        Ticks p = 0;
        for (int i = 0; i < prefix_len_; ++i) p += bid.demand(i) * rho_[i];
        partial_bid_[j] = b;
        prefix_price_[j] = p;
      }
    }
  }

  Ticks Score(std::uint64_t index) {
    DecodeBlockIndex(index, instance_.config,
                     std::span<Ticks>(rho_).subspan(prefix_len_));
    if (covered_ == instance_.types()) {
      return EvaluateRevenue(instance_.bids, instance_.catalog, key_, rho_,
                             scratch_);
    }
    Ticks revenue = 0;
    for (int j = 0; j < instance_.users(); ++j) {
      const BidProfile& bid = instance_.bids[j];
      Ticks price = prefix_price_[j];
      for (int i = prefix_len_; i < covered_; ++i) {
        price += bid.demand(i) * rho_[i];
      }
      if (partial_bid_[j] >= price) revenue += price;
    }
    return revenue;
  }

 private:
  const Instance& instance_;
  RandomOrderKey key_;
  int prefix_len_;
  int covered_;
  std::vector<Ticks> rho_;
  std::vector<Ticks> partial_bid_;
  std::vector<Ticks> prefix_price_;
  AllocationScratch scratch_;
};

}  // namespace

std::vector<Ticks> ScoreBlockSerial(const Instance& instance,
                                    RandomOrderKey key,
                                    const BlockRequest& block) {
  std::vector<Ticks> scores(block.size);
  BlockScorer scorer(instance, key, block);
  for (std::uint64_t idx = 0; idx < block.size; ++idx) {
    scores[idx] = scorer.Score(idx);
  }
  return scores;
}

std::vector<Ticks> ScoreBlockParallel(const Instance& instance,
                                      RandomOrderKey key,
                                      const BlockRequest& block) {
  std::vector<Ticks> scores(block.size);
  const auto size = static_cast<std::int64_t>(block.size);
#pragma omp parallel if (block.size >= kParallelThreshold)
  {
    BlockScorer scorer(instance, key, block);
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < size; ++idx) {
      scores[idx] = scorer.Score(static_cast<std::uint64_t>(idx));
    }
  }
  return scores;
}

}  // namespace dpca
