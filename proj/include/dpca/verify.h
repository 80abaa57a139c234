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

// Oracle-backed checks of the mechanisms' guarantees. Each check is
// self-contained, deterministic for a given seed, and reports one line.

#ifndef DPCA_VERIFY_H_
#define DPCA_VERIFY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpca/core.h"
#include "dpca/expmech.h"

namespace dpca::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 20260101;
  // Multiplies instance and trial counts; 1 runs the full-size suite.
  double scale = 1.0;
};

// Shape of the small random instances the exact checks enumerate.
struct TinyFamily {
  int max_users = 4;
  int min_types = 1;
  int max_types = 2;
  int max_supply = 4;
  int q_max = 2;
  double v_max = 4;  // grid is {0, 1, ..., v_max}
  double epsilon = 1.0;
};

// A random valid bid over `config` with at least one nonzero demand.
BidProfile RandomBid(int types, const AuctionConfig& config, Rng& rng);
Instance RandomTinyInstance(const TinyFamily& family, Rng& rng);

// The three-bidder instance used as the Basic golden example. `rebid` applies
// the second bidder's lowered bid of 5.
Instance GoldenInstance(bool rebid);

CheckResult CheckBasicGolden();
CheckResult CheckPrivacyRatio(const VerifyOptions& options);
CheckResult CheckFixedPriceTruthfulness(const VerifyOptions& options);
CheckResult CheckGammaTruthfulness(const VerifyOptions& options);
CheckResult CheckOptSandwich(const VerifyOptions& options);
CheckResult CheckRevenueBound(const VerifyOptions& options);
CheckResult CheckDegenerateGroupings(const VerifyOptions& options);
CheckResult CheckSamplerFidelity(const VerifyOptions& options);
CheckResult CheckTrends(const VerifyOptions& options);
// Runs the solve path repeatedly in-process and compares the JSON text.
CheckResult CheckSolveDeterminism(const VerifyOptions& options);

struct NamedCheck {
  std::string id;
  std::function<CheckResult(const VerifyOptions&)> run;
};

// Every check above, in a fixed order.
std::vector<NamedCheck> AllChecks();

// "PASS name (1.23 s): detail" or "FAIL ...".
std::string FormatResult(const CheckResult& result);

}  // namespace dpca::verify

#endif  // DPCA_VERIFY_H_
