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

#include "dpca/io.h"

#include "dpca/harness.h"
#include "dpca/verify.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpca {
namespace {

using ::testing::HasSubstr;

constexpr char kValid[] = R"({
  "catalog": {"supply": [1, 2]},
  "config": {"q_max": 1, "v_min": 0, "v_max": 20, "grid_step": 1,
             "epsilon": 1.0},
  "bids": [{"demands": [1, 1], "unit_bids": [6, 6]},
           {"demands": [1, 0], "unit_bids": [10, 0]},
           {"demands": [0, 1], "unit_bids": [0, 8]}]
})";

TEST(ParseInstanceTest, ReadsTheGoldenInstance) {
  auto inst = ParseInstance(kValid);
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_EQ(*inst, verify::GoldenInstance(false));
}

TEST(ParseInstanceTest, RoundTrips) {
  Rng rng(4);
  verify::TinyFamily family;
  family.max_types = 3;
  for (int k = 0; k < 50; ++k) {
    const Instance inst = verify::RandomTinyInstance(family, rng);
    auto back = ParseInstance(InstanceToJson(inst).dump());
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(*back, inst);
  }
}

TEST(ParseInstanceTest, RoundTripsFractionalGrid) {
  ScenarioPoint p;
  p.v_min = 0.5;
  p.v_max = 3.0;
  p.grid_step = 0.25;
  const Instance inst = *Generate(p, 9, 0);
  auto back = ParseInstance(InstanceToJson(inst).dump());
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, inst);
}

struct BadCase {
  const char* text;
  const char* message;
};

TEST(ParseInstanceTest, RejectsMalformedInput) {
  const BadCase cases[] = {
      {"not json", "not valid JSON"},
      {R"({"catalog": {"supply": [1]}, "config": {}, "bids": [], "extra": 1})",
       "unknown field 'extra'"},
      {R"({"catalog": {"supply": [1], "k": 2}})", "unknown field 'k'"},
      {R"({"catalog": {"supply": [1]}, "config": {"q_max": 1, "v_min": 0,
          "v_max": 5, "grid_step": 1}, "bids": []})",
       "missing field 'epsilon'"},
      {R"({"catalog": {"supply": [1]}, "config": {"q_max": 1.5, "v_min": 0,
          "v_max": 5, "grid_step": 1, "epsilon": 1}, "bids": []})",
       "must be an integer"},
      {R"({"catalog": {"supply": [1]}, "config": {"q_max": 1, "v_min": 0,
          "v_max": 5, "grid_step": 1, "epsilon": 1},
          "bids": [{"demands": [1], "unit_bids": [2.5]}]})",
       "bids[0]"},
      {R"({"catalog": {"supply": [1]}, "config": {"q_max": 1, "v_min": 0,
          "v_max": 5, "grid_step": 1, "epsilon": 1},
          "bids": [{"demands": [1], "unit_bids": [2], "note": "x"}]})",
       "unknown field 'note'"},
  };
  for (const BadCase& c : cases) {
    auto inst = ParseInstance(c.text);
    ASSERT_FALSE(inst.ok()) << c.text;
    EXPECT_EQ(inst.status().code(), absl::StatusCode::kInvalidArgument);
    EXPECT_THAT(inst.status().message(), HasSubstr(c.message));
  }
}

TEST(ResultToJsonTest, CarriesOutcomeAndStages) {
  const Instance inst = verify::GoldenInstance(false);
  Rng rng(1);
  const auto result = *RunMechanism({MechanismKind::kDpcaS, 0}, inst, {2}, rng);
  const nlohmann::json j = ResultToJson(result, inst.config);
  EXPECT_EQ(j["outcome"]["winners"].size(), result.outcome.winners.size());
  EXPECT_EQ(j["outcome"]["clearing_prices"].size(), 2u);
  ASSERT_EQ(j["stages"].size(), 2u);
  EXPECT_EQ(j["stages"][1]["sensitivity"].get<double>(), 40);

  const auto basic = RunBasic(inst);
  EXPECT_TRUE(ResultToJson(basic, inst.config)["outcome"]["clearing_prices"]
                  .is_null());
}

}  // namespace
}  // namespace dpca
