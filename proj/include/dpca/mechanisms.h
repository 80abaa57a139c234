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

#ifndef DPCA_MECHANISMS_H_
#define DPCA_MECHANISMS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpca/allocation.h"
#include "dpca/core.h"
#include "dpca/expmech.h"
#include "dpca/scoring.h"

namespace dpca {

// One exponential-mechanism invocation: which types it priced and with what
// budget and sensitivity (money units).
struct StageBudget {
  int first_type = 0;
  int type_count = 0;
  double epsilon = 0;
  double sensitivity = 0;
};

struct MechanismResult {
  AuctionOutcome outcome;
  std::vector<StageBudget> stages;  // empty for the non-private baseline
};

// Partition of the m types into ceil(m / t) consecutive blocks of size t,
// the last block possibly shorter.
class GroupingPlan {
 public:
  static absl::StatusOr<GroupingPlan> Create(int types, int group_size);

  int group_size() const { return group_size_; }
  int group_count() const { return static_cast<int>(groups_.size()); }
  // (first type, type count) per group.
  const std::vector<std::pair<int, int>>& groups() const { return groups_; }

 private:
  GroupingPlan(int group_size, std::vector<std::pair<int, int>> groups)
      : group_size_(group_size), groups_(std::move(groups)) {}
  int group_size_;
  std::vector<std::pair<int, int>> groups_;
};

struct MechanismOptions {
  // Largest price block a single stage may enumerate.
  std::uint64_t max_space = 10'000'000;
  Execution execution = Execution::kParallel;
};

// Sum over the first `l` types of k * b, and of k * rho.
Ticks PartialBid(const BidProfile& bid, int l);
Ticks PartialPrice(const BidProfile& bid, std::span<const Ticks> rho_prefix,
                   int l);

// Selects the whole price vector at once with budget epsilon and sensitivity
// m * q_max * v_max. Fails with ResourceExhausted when |grid|^m > max_space.
absl::StatusOr<MechanismResult> RunDpca(const Instance& instance,
                                        RandomOrderKey key, Rng& rng,
                                        const MechanismOptions& options = {});

// Selects one unit price per stage, each with budget epsilon / m.
absl::StatusOr<MechanismResult> RunDpcaS(const Instance& instance,
                                         RandomOrderKey key, Rng& rng,
                                         const MechanismOptions& options = {});

// Selects `group_size` unit prices per stage, each with budget
// epsilon / ceil(m / group_size). group_size = 1 is RunDpcaS and
// group_size = m is RunDpca.
absl::StatusOr<MechanismResult> RunDpcaM(const Instance& instance,
                                         RandomOrderKey key, Rng& rng,
                                         int group_size,
                                         const MechanismOptions& options = {});

// Non-private baseline: rank by average bid per requested instance, allocate
// greedily, charge each winner its critical bidder's average times its own
// instance count.
MechanismResult RunBasic(const Instance& instance);

enum class MechanismKind { kDpca, kDpcaS, kDpcaM, kBasic };

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kDpca;
  int group_size = 0;  // only meaningful for kDpcaM
  friend bool operator==(const MechanismSpec&, const MechanismSpec&) = default;
};

// Accepts "dpca", "dpca-s", "dpca-m" (requires group_size >= 1) and "basic".
absl::StatusOr<MechanismSpec> ParseMechanism(std::string_view name,
                                             int group_size = 0);
std::string MechanismName(MechanismKind kind);

// Exact law of the price vector the mechanism selects, indexed in canonical
// order (type 0 most significant), computed through the same scoring kernels
// and weights the sampler uses. Not defined for kBasic.
absl::StatusOr<std::vector<double>> OutputDistribution(
    const MechanismSpec& spec, const Instance& instance, RandomOrderKey key,
    const MechanismOptions& options = {});

absl::StatusOr<MechanismResult> RunMechanism(const MechanismSpec& spec,
                                             const Instance& instance,
                                             RandomOrderKey key, Rng& rng,
                                             const MechanismOptions& options = {});

}  // namespace dpca

#endif  // DPCA_MECHANISMS_H_
