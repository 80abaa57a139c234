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

// JSON instance files:
//
//   {"catalog": {"supply": [K_1, ..., K_m]},
//    "config": {"q_max": .., "v_min": .., "v_max": .., "grid_step": ..,
//               "epsilon": ..},
//    "bids": [{"demands": [...], "unit_bids": [...]}, ...]}
//
// Money values are plain JSON numbers. Unknown fields are rejected.

#ifndef DPCA_IO_H_
#define DPCA_IO_H_

#include <initializer_list>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpca/core.h"
#include "dpca/mechanisms.h"
#include "json.hpp"

namespace dpca {

absl::StatusOr<Instance> InstanceFromJson(const nlohmann::json& doc);
nlohmann::json InstanceToJson(const Instance& instance);

absl::StatusOr<Instance> ParseInstance(std::string_view text);
absl::StatusOr<Instance> ReadInstanceFile(const std::string& path);

nlohmann::json OutcomeToJson(const AuctionOutcome& outcome,
                             const AuctionConfig& config);
nlohmann::json ResultToJson(const MechanismResult& result,
                            const AuctionConfig& config);

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Rejects keys of `object` outside `allowed`; `where` names the object.
absl::Status CheckKeys(const nlohmann::json& object,
                       std::initializer_list<std::string_view> allowed,
                       const std::string& where);

}  // namespace dpca

#endif  // DPCA_IO_H_
