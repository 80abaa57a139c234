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

// Revenue scoring over blocks of the price grid.
//
// A block is every completion of a fixed price prefix rho_1..rho_p by
// `group_len` further grid prices. Completions are enumerated in canonical
// order: mixed radix over the free coordinates, the first free type being
// the most significant digit. When the completion covers all m types the
// score is the allocated revenue; otherwise it is the partial revenue over
// the covered types, taken over every user whose partial bid covers its
// partial price and ignoring supply.
//
// ScoreBlockSerial is the reference; ScoreBlockParallel splits the block
// across OpenMP threads and must agree with it bit for bit.

#ifndef DPCA_SCORING_H_
#define DPCA_SCORING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpca/allocation.h"
#include "dpca/core.h"

namespace dpca {

enum class Execution { kSerial, kParallel };

// grid_size^dims, or nullopt if it exceeds `cap`.
std::optional<std::uint64_t> SpaceSize(int grid_size, int dims,
                                       std::uint64_t cap);

// Writes the grid prices of block element `index` into `out`.
void DecodeBlockIndex(std::uint64_t index, const AuctionConfig& config,
                      std::span<Ticks> out);

// Blocks smaller than this run serially even under kParallel.
inline constexpr std::uint64_t kParallelThreshold = 256;

struct BlockRequest {
  std::span<const Ticks> prefix;  // fixed leading prices
  int group_len = 0;              // free coordinates after the prefix
  std::uint64_t size = 0;         // grid_size^group_len, precomputed
};

std::vector<Ticks> ScoreBlockSerial(const Instance& instance,
                                    RandomOrderKey key,
                                    const BlockRequest& block);

std::vector<Ticks> ScoreBlockParallel(const Instance& instance,
                                      RandomOrderKey key,
                                      const BlockRequest& block);

inline std::vector<Ticks> ScoreBlock(const Instance& instance,
                                     RandomOrderKey key,
                                     const BlockRequest& block,
                                     Execution execution) {
  return execution == Execution::kParallel
             ? ScoreBlockParallel(instance, key, block)
             : ScoreBlockSerial(instance, key, block);
}

}  // namespace dpca

#endif  // DPCA_SCORING_H_
