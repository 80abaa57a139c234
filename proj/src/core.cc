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

#include "dpca/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace dpca {
namespace {

// Grid positions beyond this are rejected so tick products stay far from
// int64 overflow.
constexpr Ticks kMaxGridTicks = 1'000'000'000;
constexpr int kMaxDemand = 1'000'000;

absl::StatusOr<Ticks> MoneyToTicks(double money, double step) {
  if (!std::isfinite(money)) {
    return absl::InvalidArgumentError("money value is not finite");
  }
  const double scaled = money / step;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, std::abs(scaled))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "value ", money, " is not a multiple of grid step ", step));
  }
  if (std::abs(rounded) > static_cast<double>(kMaxGridTicks)) {
    return absl::InvalidArgumentError(
        absl::StrCat("value ", money, " is too far from zero for the grid"));
  }
  return static_cast<Ticks>(rounded);
}

}  // namespace

absl::StatusOr<AuctionConfig> AuctionConfig::Create(int q_max, double v_min,
                                                    double v_max,
                                                    double grid_step,
                                                    double epsilon) {
  if (q_max < 1 || q_max > kMaxDemand) {
    return absl::InvalidArgumentError(
        absl::StrCat("q_max must lie in [1, ", kMaxDemand, "], got ", q_max));
  }
  if (!(std::isfinite(grid_step) && grid_step > 0)) {
    return absl::InvalidArgumentError("grid_step must be positive");
  }
  if (!(std::isfinite(epsilon) && epsilon > 0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(v_min >= 0 && v_min < v_max)) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 0 <= v_min < v_max, got [", v_min, ", ", v_max, "]"));
  }
  auto lo = MoneyToTicks(v_min, grid_step);
  if (!lo.ok()) return lo.status();
  auto hi = MoneyToTicks(v_max, grid_step);
  if (!hi.ok()) return hi.status();

  AuctionConfig config;
  config.q_max_ = q_max;
  config.v_min_ = v_min;
  config.v_max_ = v_max;
  config.grid_step_ = grid_step;
  config.epsilon_ = epsilon;
  config.min_ticks_ = *lo;
  config.max_ticks_ = *hi;
  if (config.max_ticks_ - config.min_ticks_ >= kMaxGridTicks) {
    return absl::InvalidArgumentError("price grid has too many points");
  }
  return config;
}

absl::StatusOr<Ticks> AuctionConfig::ToTicks(double money) const {
  return MoneyToTicks(money, grid_step_);
}

absl::StatusOr<AuctionConfig> AuctionConfig::WithEpsilon(double epsilon) const {
  return Create(q_max_, v_min_, v_max_, grid_step_, epsilon);
}

absl::StatusOr<VmCatalog> VmCatalog::Create(std::vector<int> supply) {
  if (supply.empty()) {
    return absl::InvalidArgumentError("catalog needs at least one VM type");
  }
  for (std::size_t i = 0; i < supply.size(); ++i) {
    if (supply[i] < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("supply of type ", i, " is negative"));
    }
  }
  return VmCatalog(std::move(supply));
}

int VmCatalog::k_min() const {
  return *std::min_element(supply_.begin(), supply_.end());
}

int VmCatalog::k_max() const {
  return *std::max_element(supply_.begin(), supply_.end());
}

absl::StatusOr<BidProfile> BidProfile::Create(std::vector<int> demands,
                                              std::vector<Ticks> unit_bids,
                                              const AuctionConfig& config) {
  if (demands.empty() || demands.size() != unit_bids.size()) {
    return absl::InvalidArgumentError(
        "demands and unit_bids must be non-empty and of equal length");
  }
  bool any_demand = false;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const int k = demands[i];
    const Ticks b = unit_bids[i];
    if (k < 0 || k > config.q_max()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "demand ", k, " for type ", i, " outside [0, ", config.q_max(), "]"));
    }
    if (k == 0 && b != 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("type ", i, " has a bid but no demand"));
    }
    if (b != 0 && (b < config.min_ticks() || b > config.max_ticks())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unit bid ", config.ToMoney(b), " for type ", i,
          " outside [v_min, v_max] and not zero"));
    }
    any_demand = any_demand || k > 0;
  }
  if (!any_demand) {
    return absl::InvalidArgumentError("bid requests no instances");
  }
  return BidProfile(std::move(demands), std::move(unit_bids));
}

int BidProfile::total_demand() const {
  return std::accumulate(demands_.begin(), demands_.end(), 0);
}

absl::Status ValidatePriceVector(const PriceVector& rho,
                                 const AuctionConfig& config, int types) {
  if (rho.types() != types) {
    return absl::InvalidArgumentError(absl::StrCat(
        "price vector has ", rho.types(), " entries, expected ", types));
  }
  for (Ticks p : rho.prices) {
    if (p < config.min_ticks() || p > config.max_ticks()) {
      return absl::InvalidArgumentError(
          absl::StrCat("price ", config.ToMoney(p), " is off the grid"));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckOutcome(const AuctionOutcome& outcome,
                          std::span<const BidProfile> bids,
                          const VmCatalog& catalog) {
  const std::size_t n = bids.size();
  if (outcome.allocation.size() != n || outcome.payments.size() != n) {
    return absl::InternalError("outcome vectors do not match user count");
  }
  if (!std::is_sorted(outcome.winners.begin(), outcome.winners.end()) ||
      std::adjacent_find(outcome.winners.begin(), outcome.winners.end()) !=
          outcome.winners.end()) {
    return absl::InternalError("winner list is not strictly ascending");
  }
  std::vector<int> is_winner(n, 0);
  for (int j : outcome.winners) {
    if (j < 0 || static_cast<std::size_t>(j) >= n) {
      return absl::InternalError("winner index out of range");
    }
    is_winner[j] = 1;
  }
  double total = 0;
  std::vector<long long> used(catalog.types(), 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (outcome.allocation[j] != is_winner[j]) {
      return absl::InternalError(absl::StrCat("allocation mismatch at ", j));
    }
    if (!is_winner[j] && outcome.payments[j] != 0) {
      return absl::InternalError(absl::StrCat("loser ", j, " pays"));
    }
    if (is_winner[j]) {
      for (int i = 0; i < catalog.types(); ++i) used[i] += bids[j].demand(i);
    }
    total += outcome.payments[j];
  }
  for (int i = 0; i < catalog.types(); ++i) {
    if (used[i] > catalog.supply(i)) {
      return absl::InternalError(
          absl::StrCat("type ", i, " oversold: ", used[i], " > ",
                       catalog.supply(i)));
    }
  }
  if (std::abs(total - outcome.revenue) > 1e-9 * std::max(1.0, total)) {
    return absl::InternalError("revenue is not the sum of payments");
  }
  return absl::OkStatus();
}

absl::StatusOr<Instance> Instance::Create(VmCatalog catalog,
                                          AuctionConfig config,
                                          std::vector<BidProfile> bids) {
  for (std::size_t j = 0; j < bids.size(); ++j) {
    if (bids[j].types() != catalog.types()) {
      return absl::InvalidArgumentError(
          absl::StrCat("bid ", j, " covers ", bids[j].types(),
                       " types, catalog has ", catalog.types()));
    }
    // Profiles may have been built against another config.
    auto recheck = BidProfile::Create(bids[j].demands(), bids[j].unit_bids(),
                                      config);
    if (!recheck.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("bid ", j, ": ", recheck.status().message()));
    }
  }
  return Instance{std::move(catalog), std::move(config), std::move(bids)};
}

Ticks TotalBid(const BidProfile& bid) {
  Ticks total = 0;
  for (int i = 0; i < bid.types(); ++i) total += bid.demand(i) * bid.unit_bid(i);
  return total;
}

absl::StatusOr<Ticks> ClearingPrice(const BidProfile& bid,
                                    std::span<const Ticks> rho) {
  if (static_cast<int>(rho.size()) != bid.types()) {
    return absl::InvalidArgumentError(
        absl::StrCat("price vector has ", rho.size(), " entries, bid has ",
                     bid.types(), " types"));
  }
  return ClearingPriceUnchecked(bid, rho);
}

double Utility(const BidProfile& truthful, const AuctionOutcome& outcome,
               int user, const AuctionConfig& config) {
  const double value =
      outcome.allocation[user] ? config.ToMoney(TotalBid(truthful)) : 0.0;
  return value - outcome.payments[user];
}

}  // namespace dpca
