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

#include <omp.h>

#include "dpca/harness.h"
#include "dpca/mechanisms.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpca {
namespace {

using ::dpca::testing::Config;
using ::testing::ElementsAre;

TEST(SpaceSizeTest, PowersAndCap) {
  EXPECT_EQ(SpaceSize(11, 3, 10'000), 1331u);
  EXPECT_EQ(SpaceSize(11, 0, 10), 1u);
  EXPECT_EQ(SpaceSize(11, 4, 10'000), std::nullopt);
  EXPECT_EQ(SpaceSize(1'000'000, 4, UINT64_MAX), std::nullopt);
}

TEST(DecodeBlockIndexTest, LastCoordinateVariesFastest) {
  const AuctionConfig c = Config(1, 12, 1.0, 10);  // grid {10, 11, 12}
  std::vector<Ticks> out(2);
  DecodeBlockIndex(0, c, out);
  EXPECT_THAT(out, ElementsAre(10, 10));
  DecodeBlockIndex(1, c, out);
  EXPECT_THAT(out, ElementsAre(10, 11));
  DecodeBlockIndex(5, c, out);
  EXPECT_THAT(out, ElementsAre(11, 12));
}

TEST(ScoreBlockTest, FullBlockMatchesEvaluatePrice) {
  const Instance inst = *Generate(ScenarioPoint{}, 3, 0);
  const RandomOrderKey key{12345};
  const auto scores =
      ScoreBlockSerial(inst, key, BlockRequest{{}, 3, 1331});
  std::vector<Ticks> rho(3);
  for (std::uint64_t k = 0; k < scores.size(); k += 37) {
    DecodeBlockIndex(k, inst.config, rho);
    EXPECT_EQ(scores[k],
              EvaluatePrice(inst.bids, inst.catalog, key, rho).revenue);
  }
}

TEST(ScoreBlockTest, PartialBlockScoresUncappedPartialRevenue) {
  const Instance inst = *Generate(ScenarioPoint{}, 4, 0);
  const std::vector<Ticks> prefix = {3};
  const auto scores =
      ScoreBlockSerial(inst, {1}, BlockRequest{prefix, 1, 11});
  for (int g = 0; g < 11; ++g) {
    const std::vector<Ticks> rho = {3, g};
    Ticks expected = 0;
    for (const BidProfile& b : inst.bids) {
      const Ticks p = PartialPrice(b, rho, 2);
      if (PartialBid(b, 2) >= p) expected += p;
    }
    EXPECT_EQ(scores[g], expected) << "price " << g;
  }
}

// The parallel kernel must reproduce the serial reference bit for bit,
// whatever the thread count.
TEST(ScoreBlockTest, ParallelIsBitIdenticalToSerial) {
  ScenarioPoint p;
  p.m = 4;
  for (int trial = 0; trial < 3; ++trial) {
    const Instance inst = *Generate(p, 8, trial);
    const RandomOrderKey key{static_cast<std::uint64_t>(trial) + 100};
    const std::vector<Ticks> prefix = {2};
    for (const BlockRequest& block :
         {BlockRequest{{}, 4, 14641}, BlockRequest{prefix, 3, 1331},
          BlockRequest{prefix, 2, 121}}) {
      const auto serial = ScoreBlockSerial(inst, key, block);
      for (int threads : {1, 2, 4, 7}) {
        omp_set_num_threads(threads);
        EXPECT_EQ(ScoreBlockParallel(inst, key, block), serial)
            << "threads " << threads;
      }
    }
  }
}

TEST(ScoreBlockTest, MechanismOutputIndependentOfExecution) {
  const Instance inst = *Generate(ScenarioPoint{}, 21, 0);
  for (int t : {1, 2, 3}) {
    Rng a(5);
    Rng b(5);
    omp_set_num_threads(4);
    const auto par = *RunDpcaM(inst, {9}, a, t, {10'000'000, Execution::kParallel});
    const auto ser = *RunDpcaM(inst, {9}, b, t, {10'000'000, Execution::kSerial});
    EXPECT_EQ(par.outcome.clearing_prices, ser.outcome.clearing_prices);
    EXPECT_EQ(par.outcome.winners, ser.outcome.winners);
  }
}

}  // namespace
}  // namespace dpca
