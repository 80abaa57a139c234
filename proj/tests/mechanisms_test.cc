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

#include "dpca/mechanisms.h"

#include <cmath>
#include <numeric>

#include "dpca/harness.h"
#include "dpca/verify.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpca {
namespace {

using ::dpca::testing::Bid;
using ::dpca::testing::Config;
using ::dpca::testing::MakeInstance;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Pair;

std::vector<double> Softmax(const std::vector<double>& scores, double eps,
                            double delta) {
  std::vector<double> w;
  for (double s : scores) w.push_back(std::exp(eps * s / (2 * delta)));
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= z;
  return w;
}

std::vector<double> Law(const Instance& inst, MechanismSpec spec,
                        RandomOrderKey key = {1}) {
  auto d = OutputDistribution(spec, inst, key);
  EXPECT_TRUE(d.ok()) << d.status();
  return *d;
}

void ExpectSameLaw(const std::vector<double>& a, const std::vector<double>& b,
                   double tol = 1e-12) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], tol) << k;
}

constexpr MechanismSpec kDpca{MechanismKind::kDpca, 0};
constexpr MechanismSpec kDpcaS{MechanismKind::kDpcaS, 0};

TEST(GroupingPlanTest, ConsecutiveBlocks) {
  auto plan = GroupingPlan::Create(4, 3);
  ASSERT_TRUE(plan.ok());
  EXPECT_THAT(plan->groups(), ElementsAre(Pair(0, 3), Pair(3, 1)));
  EXPECT_EQ(GroupingPlan::Create(5, 2)->group_count(), 3);
  EXPECT_FALSE(GroupingPlan::Create(3, 0).ok());
  EXPECT_FALSE(GroupingPlan::Create(3, 4).ok());
}

TEST(PartialTest, Examples) {
  const AuctionConfig c = Config(3, 10);
  const BidProfile b = Bid({2, 1, 0}, {3, 7, 0}, c);
  EXPECT_EQ(PartialBid(b, 1), 6);
  EXPECT_EQ(PartialBid(b, 3), TotalBid(b));
  const std::vector<Ticks> rho = {4, 5, 9};
  EXPECT_EQ(PartialPrice(b, rho, 3), ClearingPriceUnchecked(b, rho));
  EXPECT_EQ(PartialPrice(Bid({0, 2, 0}, {0, 1, 0}, c), rho, 1), 0);
}

TEST(RunDpcaTest, SingleBidderLawIsClosedFormSoftmax) {
  for (double eps : {0.3, 1.0, 4.0}) {
    const Instance inst = MakeInstance({1}, Config(1, 5, eps), {{{1}, {5}}});
    // revenue(rho) = rho on {0..5}; sensitivity 1 * 1 * 5.
    ExpectSameLaw(Law(inst, kDpca), Softmax({0, 1, 2, 3, 4, 5}, eps, 5));
  }
}

TEST(RunDpcaTest, LargeBudgetConcentratesOnArgmax) {
  const Instance inst = MakeInstance({1}, Config(1, 5, 50), {{{1}, {5}}});
  Rng rng(8);
  int hits = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto r = RunDpca(inst, {3}, rng);
    ASSERT_TRUE(r.ok());
    hits += r->outcome.clearing_prices.value().prices[0] == 5;
  }
  EXPECT_GE(hits, 9900);
}

TEST(RunDpcaTest, ZeroSupplyGivesUniformLaw) {
  const Instance inst = MakeInstance({0, 0}, Config(2, 4),
                                     {{{1, 2}, {3, 4}}, {{2, 0}, {1, 0}}});
  ExpectSameLaw(Law(inst, kDpca), std::vector<double>(25, 1.0 / 25));
}

TEST(RunDpcaTest, ReportsSpaceCap) {
  ScenarioPoint p;
  p.m = 7;  // 11^7 > 10^7
  const Instance inst = *Generate(p, 1, 0);
  Rng rng(1);
  const auto r = RunDpca(inst, {1}, rng);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
  EXPECT_THAT(r.status().message(), HasSubstr("11^7"));
  // The stagewise variant stays within the cap.
  EXPECT_TRUE(RunDpcaS(inst, {1}, rng).ok());
}

TEST(RunDpcaSTest, SingleTypeMatchesDpca) {
  const Instance inst = MakeInstance({2}, Config(2, 6, 0.7),
                                     {{{1}, {5}}, {{2}, {3}}, {{1}, {6}}});
  ExpectSameLaw(Law(inst, kDpcaS), Law(inst, kDpca));
}

TEST(RunDpcaSTest, TwoStageLawByHand) {
  const double eps = 1.0;
  const Instance inst =
      MakeInstance({1, 1}, Config(1, 4, eps), {{{1, 1}, {3, 4}}});
  // Stage one: score rho_1 * [3 >= rho_1], budget eps/2, sensitivity 4.
  std::vector<double> first;
  for (int r1 = 0; r1 <= 4; ++r1) first.push_back(r1 <= 3 ? r1 : 0);
  const auto p1 = Softmax(first, eps / 2, 4);
  // Stage two: full revenue (r1 + r2) * [7 >= r1 + r2], sensitivity 8.
  std::vector<double> expected;
  for (int r1 = 0; r1 <= 4; ++r1) {
    std::vector<double> second;
    for (int r2 = 0; r2 <= 4; ++r2) {
      second.push_back(r1 + r2 <= 7 ? r1 + r2 : 0);
    }
    for (double q : Softmax(second, eps / 2, 8)) expected.push_back(p1[r1] * q);
  }
  ExpectSameLaw(Law(inst, kDpcaS), expected);
}

TEST(RunDpcaSTest, ZeroSupplyStillScoresPartialRevenue) {
  const double eps = 1.0;
  const Instance inst =
      MakeInstance({0, 0}, Config(1, 4, eps), {{{1, 1}, {3, 4}}});
  std::vector<double> first;
  for (int r1 = 0; r1 <= 4; ++r1) first.push_back(r1 <= 3 ? r1 : 0);
  const auto p1 = Softmax(first, eps / 2, 4);
  std::vector<double> expected;
  for (int r1 = 0; r1 <= 4; ++r1) {
    for (int r2 = 0; r2 <= 4; ++r2) expected.push_back(p1[r1] / 5);
  }
  ExpectSameLaw(Law(inst, kDpcaS), expected);
}

TEST(RunDpcaMTest, DegenerateGroupSizes) {
  Rng rng(31);
  verify::TinyFamily family;
  family.max_types = 3;
  for (int k = 0; k < 20; ++k) {
    const Instance inst = verify::RandomTinyInstance(family, rng);
    const int m = inst.types();
    ExpectSameLaw(Law(inst, {MechanismKind::kDpcaM, 1}), Law(inst, kDpcaS));
    ExpectSameLaw(Law(inst, {MechanismKind::kDpcaM, m}), Law(inst, kDpca));
  }
}

TEST(RunDpcaMTest, StageBudgetsAndSensitivities) {
  ScenarioPoint p;
  p.m = 4;
  p.q_max = 3;
  p.v_max = 5;
  p.epsilon = 2.0;
  const Instance inst = *Generate(p, 2, 0);
  Rng rng(2);
  const auto r = *RunDpcaM(inst, {4}, rng, 3);
  ASSERT_EQ(r.stages.size(), 2u);
  EXPECT_EQ(r.stages[0].first_type, 0);
  EXPECT_EQ(r.stages[0].type_count, 3);
  EXPECT_EQ(r.stages[0].sensitivity, 3 * 3 * 5);
  EXPECT_EQ(r.stages[1].first_type, 3);
  EXPECT_EQ(r.stages[1].type_count, 1);
  EXPECT_EQ(r.stages[1].sensitivity, 4 * 3 * 5);
  EXPECT_DOUBLE_EQ(r.stages[0].epsilon + r.stages[1].epsilon, 2.0);
}

TEST(RunMechanismTest, OutcomesRespectInvariantsAndChargeClearingPrices) {
  ScenarioPoint p;
  p.n = 25;
  p.k_min = 5;
  p.k_max = 30;
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = *Generate(p, 40, trial);
    for (MechanismSpec spec :
         {kDpca, kDpcaS, MechanismSpec{MechanismKind::kDpcaM, 2}}) {
      Rng rng(trial);
      const auto r = *RunMechanism(spec, inst, {7}, rng);
      EXPECT_TRUE(CheckOutcome(r.outcome, inst.bids, inst.catalog).ok());
      double budget = 0;
      for (const StageBudget& s : r.stages) budget += s.epsilon;
      EXPECT_NEAR(budget, inst.config.epsilon(), 1e-12);
      const auto& rho = r.outcome.clearing_prices->prices;
      for (int j = 0; j < inst.users(); ++j) {
        const double expected =
            r.outcome.allocation[j]
                ? inst.config.ToMoney(ClearingPriceUnchecked(inst.bids[j], rho))
                : 0;
        EXPECT_EQ(r.outcome.payments[j], expected);
      }
      // Winners are recomputed at the chosen price with the same key.
      EXPECT_EQ(r.outcome.winners,
                EvaluatePrice(inst.bids, inst.catalog, {7}, rho).winners);
    }
    const auto basic = RunBasic(inst);
    EXPECT_TRUE(CheckOutcome(basic.outcome, inst.bids, inst.catalog).ok());
  }
}

TEST(RunBasicTest, GoldenExample) {
  const auto before = RunBasic(verify::GoldenInstance(false));
  EXPECT_THAT(before.outcome.winners, ElementsAre(1, 2));
  EXPECT_THAT(before.outcome.payments, ElementsAre(0, 6, 0));
  EXPECT_EQ(before.outcome.revenue, 6);
  const auto after = RunBasic(verify::GoldenInstance(true));
  EXPECT_THAT(after.outcome.winners, ElementsAre(0, 2));
  EXPECT_THAT(after.outcome.payments, ElementsAre(10, 0, 0));
  EXPECT_FALSE(after.outcome.clearing_prices.has_value());
  EXPECT_TRUE(after.stages.empty());
}

TEST(RunBasicTest, LoneBidderPaysNothing) {
  const Instance inst = MakeInstance({3}, Config(2, 9), {{{2}, {7}}});
  const auto r = RunBasic(inst);
  EXPECT_THAT(r.outcome.winners, ElementsAre(0));
  EXPECT_THAT(r.outcome.payments, ElementsAre(0));
}

TEST(RunBasicTest, NoProfitableBidChangeOnGoldenInstance) {
  for (bool rebid : {false, true}) {
    const Instance truth = verify::GoldenInstance(rebid);
    const auto honest = RunBasic(truth);
    for (int j = 0; j < truth.users(); ++j) {
      const BidProfile& real = truth.bids[j];
      const double u0 = Utility(real, honest.outcome, j, truth.config);
      for (int b0 = 0; b0 <= 20; ++b0) {
        for (int b1 = 0; b1 <= 20; ++b1) {
          std::vector<Ticks> unit = {real.demand(0) ? b0 : 0,
                                     real.demand(1) ? b1 : 0};
          auto lie = BidProfile::Create(real.demands(), unit, truth.config);
          ASSERT_TRUE(lie.ok());
          Instance deviant = truth;
          deviant.bids[j] = *lie;
          const auto r = RunBasic(deviant);
          EXPECT_LE(Utility(real, r.outcome, j, truth.config), u0)
              << "user " << j << " bids " << b0 << "," << b1;
        }
      }
    }
  }
}

TEST(ParseMechanismTest, Names) {
  EXPECT_EQ(*ParseMechanism("dpca"), kDpca);
  EXPECT_EQ(*ParseMechanism("dpca-s"), kDpcaS);
  EXPECT_EQ(ParseMechanism("dpca-m", 3)->group_size, 3);
  EXPECT_EQ(ParseMechanism("basic")->kind, MechanismKind::kBasic);
  EXPECT_FALSE(ParseMechanism("dpca-m").ok());
  EXPECT_FALSE(ParseMechanism("vcg").ok());
  EXPECT_EQ(MechanismName(MechanismKind::kDpcaM), "dpca-m");
}

TEST(RunDpcaMTest, GroupLargerThanTypesIsRejected) {
  const Instance inst = MakeInstance({1}, Config(1, 5), {{{1}, {5}}});
  Rng rng(1);
  EXPECT_EQ(RunDpcaM(inst, {1}, rng, 2).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace dpca
