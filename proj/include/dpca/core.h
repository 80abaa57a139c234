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

#ifndef DPCA_CORE_H_
#define DPCA_CORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpca {

// Money is held as an integer count of price-grid steps ("ticks"). A value
// of `t` ticks is worth `t * grid_step` money units. Zero is always 0 ticks.
using Ticks = std::int64_t;

// Auction-wide parameters: demand cap, price/valuation bounds, grid spacing
// and the total privacy budget. The price grid is
// {v_min, v_min + grid_step, ..., v_max}.
class AuctionConfig {
 public:
  static absl::StatusOr<AuctionConfig> Create(int q_max, double v_min,
                                              double v_max, double grid_step,
                                              double epsilon);

  int q_max() const { return q_max_; }
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  double grid_step() const { return grid_step_; }
  double epsilon() const { return epsilon_; }

  Ticks min_ticks() const { return min_ticks_; }
  Ticks max_ticks() const { return max_ticks_; }

  // Number of points in the price grid.
  int grid_size() const { return static_cast<int>(max_ticks_ - min_ticks_) + 1; }
  Ticks GridPrice(int index) const { return min_ticks_ + index; }

  double ToMoney(Ticks ticks) const {
    return static_cast<double>(ticks) * grid_step_;
  }
  // Fails unless `money` is an integer multiple of the grid step.
  absl::StatusOr<Ticks> ToTicks(double money) const;

  absl::StatusOr<AuctionConfig> WithEpsilon(double epsilon) const;

  friend bool operator==(const AuctionConfig&, const AuctionConfig&) = default;

 private:
  AuctionConfig() = default;

  int q_max_ = 1;
  double v_min_ = 0;
  double v_max_ = 1;
  double grid_step_ = 1;
  double epsilon_ = 1;
  Ticks min_ticks_ = 0;
  Ticks max_ticks_ = 1;
};

// Supply side: K_i instances of each of the m VM types.
class VmCatalog {
 public:
  static absl::StatusOr<VmCatalog> Create(std::vector<int> supply);

  int types() const { return static_cast<int>(supply_.size()); }
  const std::vector<int>& supply() const { return supply_; }
  int supply(int type) const { return supply_[type]; }

  // Tightest inclusive bounds on the per-type supply.
  int k_min() const;
  int k_max() const;

  friend bool operator==(const VmCatalog&, const VmCatalog&) = default;

 private:
  explicit VmCatalog(std::vector<int> supply) : supply_(std::move(supply)) {}
  std::vector<int> supply_;
};

// One user's sealed bid: requested count and per-instance bid for each type.
// A zero demand means "not interested" and always carries a zero bid.
class BidProfile {
 public:
  static absl::StatusOr<BidProfile> Create(std::vector<int> demands,
                                           std::vector<Ticks> unit_bids,
                                           const AuctionConfig& config);

  int types() const { return static_cast<int>(demands_.size()); }
  const std::vector<int>& demands() const { return demands_; }
  const std::vector<Ticks>& unit_bids() const { return unit_bids_; }
  int demand(int type) const { return demands_[type]; }
  Ticks unit_bid(int type) const { return unit_bids_[type]; }

  // Total number of instances requested over all types.
  int total_demand() const;

  friend bool operator==(const BidProfile&, const BidProfile&) = default;

 private:
  BidProfile(std::vector<int> demands, std::vector<Ticks> unit_bids)
      : demands_(std::move(demands)), unit_bids_(std::move(unit_bids)) {}

  std::vector<int> demands_;
  std::vector<Ticks> unit_bids_;
};

// One unit price per VM type, each a point of the price grid.
struct PriceVector {
  std::vector<Ticks> prices;

  int types() const { return static_cast<int>(prices.size()); }
  friend bool operator==(const PriceVector&, const PriceVector&) = default;
};

absl::Status ValidatePriceVector(const PriceVector& rho,
                                 const AuctionConfig& config, int types);

struct AuctionOutcome {
  std::vector<int> winners;     // ascending user indices
  std::vector<int> allocation;  // x_j in {0, 1}
  std::vector<double> payments; // money; zero for losers
  double revenue = 0;
  // Absent for mechanisms that do not clear at a unit price vector.
  std::optional<PriceVector> clearing_prices;
};

// Checks the outcome bookkeeping and the instance constraint against `bids`.
absl::Status CheckOutcome(const AuctionOutcome& outcome,
                          std::span<const BidProfile> bids,
                          const VmCatalog& catalog);

// A complete auction input.
struct Instance {
  VmCatalog catalog;
  AuctionConfig config;
  std::vector<BidProfile> bids;

  int users() const { return static_cast<int>(bids.size()); }
  int types() const { return catalog.types(); }

  static absl::StatusOr<Instance> Create(VmCatalog catalog,
                                         AuctionConfig config,
                                         std::vector<BidProfile> bids);

  friend bool operator==(const Instance&, const Instance&) = default;
};

Ticks TotalBid(const BidProfile& bid);

// Sum of k_j^i * rho_i. Dimensions must agree.
absl::StatusOr<Ticks> ClearingPrice(const BidProfile& bid,
                                    std::span<const Ticks> rho);

// Unchecked form for inner loops.
inline Ticks ClearingPriceUnchecked(const BidProfile& bid,
                                    std::span<const Ticks> rho) {
  Ticks total = 0;
  for (int i = 0; i < bid.types(); ++i) total += bid.demand(i) * rho[i];
  return total;
}

// u_j = V_j x_j - P_j, in money, where `truthful` carries the valuation.
double Utility(const BidProfile& truthful, const AuctionOutcome& outcome,
               int user, const AuctionConfig& config);

}  // namespace dpca

#endif  // DPCA_CORE_H_
