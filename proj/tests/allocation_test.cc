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
#include <map>
#include <numeric>
#include <random>

#include "dpca/verify.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpca {
namespace {

using ::dpca::testing::Config;
using ::dpca::testing::MakeInstance;
using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::UnorderedElementsAreArray;

Instance GoldenExample() { return verify::GoldenInstance(false); }

TEST(SelectCandidatesTest, GoldenInstanceAtTenEight) {
  const Instance inst = GoldenExample();
  const std::vector<Ticks> rho = {10, 8};
  EXPECT_THAT(SelectCandidates(inst.bids, rho), ElementsAre(1, 2));
}

TEST(SelectCandidatesTest, LowestPricesAdmitEveryone) {
  const Instance inst = GoldenExample();
  const std::vector<Ticks> rho = {0, 0};
  EXPECT_THAT(SelectCandidates(inst.bids, rho), ElementsAre(0, 1, 2));
}

TEST(SelectCandidatesTest, TieIsIncludedAndShortfallExcluded) {
  const AuctionConfig c = Config(1, 10);
  const Instance inst = MakeInstance({1}, c, {{{1}, {5}}});
  const std::vector<Ticks> at = {5};
  const std::vector<Ticks> above = {6};
  EXPECT_THAT(SelectCandidates(inst.bids, at), ElementsAre(0));
  EXPECT_THAT(SelectCandidates(inst.bids, above), IsEmpty());
}

TEST(OrderCandidatesTest, EmptyAndSingleton) {
  const std::vector<Ticks> rho = {3, 4};
  EXPECT_THAT(OrderCandidates({7}, rho, {}), IsEmpty());
  EXPECT_THAT(OrderCandidates({7}, rho, {5}), ElementsAre(5));
}

TEST(OrderCandidatesTest, DeterministicPermutation) {
  const std::vector<Ticks> rho = {3, 4};
  const auto a = OrderCandidates({99}, rho, {1, 2, 3});
  const auto b = OrderCandidates({99}, rho, {1, 2, 3});
  EXPECT_EQ(a, b);
  EXPECT_THAT(a, UnorderedElementsAreArray({1, 2, 3}));
}

TEST(OrderCandidatesTest, RelativeOrderIgnoresOtherMembers) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const RandomOrderKey key{rng()};
    const std::vector<Ticks> rho = {static_cast<Ticks>(trial % 7), 2};
    const auto full = OrderCandidates(key, rho, {0, 1, 2, 3, 4, 5});
    const auto part = OrderCandidates(key, rho, {1, 3, 4});
    std::vector<int> filtered;
    for (int u : full) {
      if (u == 1 || u == 3 || u == 4) filtered.push_back(u);
    }
    EXPECT_EQ(filtered, part);
  }
}

TEST(OrderCandidatesTest, UniformOverPermutationsAsSeedVaries) {
  // 3! orders, 60000 keys: each count within 4 sigma of 10000.
  std::map<std::vector<int>, int> counts;
  const std::vector<Ticks> rho = {1, 1};
  const int draws = 60000;
  for (int s = 0; s < draws; ++s) {
    ++counts[OrderCandidates({static_cast<std::uint64_t>(s)}, rho, {0, 1, 2})];
  }
  ASSERT_EQ(counts.size(), 6u);
  const double p = 1.0 / 6;
  const double sigma = std::sqrt(draws * p * (1 - p));
  for (const auto& [order, count] : counts) {
    EXPECT_NEAR(count, draws * p, 4 * sigma);
  }
}

TEST(OrderCandidatesTest, DifferentPricesGiveIndependentOrders) {
  // Over many keys, the order at one price says nothing about another.
  int same = 0;
  const int draws = 20000;
  for (int s = 0; s < draws; ++s) {
    const RandomOrderKey key{static_cast<std::uint64_t>(s) * 7919};
    const std::vector<Ticks> a = {1, 2};
    const std::vector<Ticks> b = {2, 1};
    same += OrderCandidates(key, a, {0, 1}) == OrderCandidates(key, b, {0, 1});
  }
  EXPECT_NEAR(same, draws / 2.0, 4 * std::sqrt(draws * 0.25));
}

TEST(AllocateTest, GoldenOrderBothFit) {
  const Instance inst = GoldenExample();
  const std::vector<int> order = {1, 2};
  EXPECT_THAT(Allocate(order, inst.bids, inst.catalog), ElementsAre(1, 2));
}

TEST(AllocateTest, FirstBuyerBlocksSecond) {
  const Instance inst = GoldenExample();
  const std::vector<int> order = {0, 1, 2};
  EXPECT_THAT(Allocate(order, inst.bids, inst.catalog), ElementsAre(0, 2));
}

TEST(AllocateTest, AmpleSupplyAdmitsEveryCandidate) {
  const AuctionConfig c = Config(3, 10);
  const Instance inst = MakeInstance(
      {100, 100}, c, {{{3, 1}, {5, 5}}, {{2, 2}, {1, 1}}, {{0, 3}, {0, 9}}});
  const std::vector<int> order = {2, 0, 1};
  EXPECT_THAT(Allocate(order, inst.bids, inst.catalog), ElementsAre(0, 1, 2));
}

TEST(AllocateTest, ZeroSupplyBlocksEveryoneWhoNeedsIt) {
  const AuctionConfig c = Config(3, 10);
  const Instance inst =
      MakeInstance({0, 5}, c, {{{1, 0}, {5, 0}}, {{0, 2}, {0, 4}}});
  const std::vector<int> order = {0, 1};
  EXPECT_THAT(Allocate(order, inst.bids, inst.catalog), ElementsAre(1));
}

TEST(RevenueTest, Examples) {
  const Instance inst = GoldenExample();
  const std::vector<Ticks> rho = {6, 0};
  const std::vector<int> winners = {1, 2};
  EXPECT_EQ(Revenue(winners, inst.bids, rho), 6);
  EXPECT_EQ(Revenue({}, inst.bids, rho), 0);

  const AuctionConfig c = Config(3, 10);
  const Instance one = MakeInstance({5, 5}, c, {{{2, 1}, {5, 5}}});
  const std::vector<Ticks> rho2 = {3, 4};
  const std::vector<int> w = {0};
  EXPECT_EQ(Revenue(w, one.bids, rho2), 10);
}

// Property sweep over random tiny instances, every price and many keys.
class AllocationPropertyTest : public ::testing::Test {
 protected:
  void ForEachCase(auto check) {
    Rng rng(17);
    verify::TinyFamily family;
    family.max_users = 6;
    family.max_types = 3;
    for (int k = 0; k < 60; ++k) {
      const Instance inst = verify::RandomTinyInstance(family, rng);
      const RandomOrderKey key{rng()};
      const int grid = inst.config.grid_size();
      std::vector<Ticks> rho(inst.types(), 0);
      const int total = static_cast<int>(std::pow(grid, inst.types()));
      for (int idx = 0; idx < total; ++idx) {
        int rest = idx;
        for (int d = inst.types(); d-- > 0;) {
          rho[d] = inst.config.GridPrice(rest % grid);
          rest /= grid;
        }
        check(inst, key, rho);
      }
    }
  }
};

TEST_F(AllocationPropertyTest, WinnersAreFeasibleCandidates) {
  ForEachCase([](const Instance& inst, RandomOrderKey key,
                 const std::vector<Ticks>& rho) {
    const PriceEvaluation eval =
        EvaluatePrice(inst.bids, inst.catalog, key, rho);
    std::vector<int> used(inst.types(), 0);
    for (int j : eval.winners) {
      EXPECT_GE(TotalBid(inst.bids[j]),
                ClearingPriceUnchecked(inst.bids[j], rho));
      for (int i = 0; i < inst.types(); ++i) used[i] += inst.bids[j].demand(i);
    }
    for (int i = 0; i < inst.types(); ++i) {
      EXPECT_LE(used[i], inst.catalog.supply(i));
    }
    EXPECT_EQ(eval.revenue, Revenue(eval.winners, inst.bids, rho));
    EXPECT_GE(eval.revenue, 0);
  });
}

TEST_F(AllocationPropertyTest, EvaluationIsPureAndFastPathAgrees) {
  AllocationScratch scratch;
  ForEachCase([&](const Instance& inst, RandomOrderKey key,
                  const std::vector<Ticks>& rho) {
    const PriceEvaluation a = EvaluatePrice(inst.bids, inst.catalog, key, rho);
    const PriceEvaluation b = EvaluatePrice(inst.bids, inst.catalog, key, rho);
    EXPECT_EQ(a.winners, b.winners);
    EXPECT_EQ(a.revenue,
              EvaluateRevenue(inst.bids, inst.catalog, key, rho, scratch));
  });
}

TEST_F(AllocationPropertyTest, ZeroRevenueOnlyWithoutPaidWinners) {
  ForEachCase([](const Instance& inst, RandomOrderKey key,
                 const std::vector<Ticks>& rho) {
    const PriceEvaluation eval =
        EvaluatePrice(inst.bids, inst.catalog, key, rho);
    if (eval.revenue > 0) return;
    for (int j : eval.winners) {
      EXPECT_EQ(ClearingPriceUnchecked(inst.bids[j], rho), 0);
    }
  });
}

TEST(AllocateTest, FeasibleUnderEveryPermutation) {
  Rng rng(23);
  verify::TinyFamily family;
  family.max_users = 6;
  family.max_types = 3;
  for (int k = 0; k < 40; ++k) {
    const Instance inst = verify::RandomTinyInstance(family, rng);
    std::vector<int> order(inst.users());
    std::iota(order.begin(), order.end(), 0);
    do {
      std::vector<int> used(inst.types(), 0);
      for (int j : Allocate(order, inst.bids, inst.catalog)) {
        for (int i = 0; i < inst.types(); ++i) {
          used[i] += inst.bids[j].demand(i);
        }
      }
      for (int i = 0; i < inst.types(); ++i) {
        ASSERT_LE(used[i], inst.catalog.supply(i));
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

}  // namespace
}  // namespace dpca
