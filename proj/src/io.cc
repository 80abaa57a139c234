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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"

namespace dpca {
namespace {

using nlohmann::json;

absl::StatusOr<const json*> Field(const json& object, const std::string& key,
                                  const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, ": missing field '", key, "'"));
  }
  return &*it;
}

absl::StatusOr<double> NumberField(const json& object, const std::string& key,
                                   const std::string& where) {
  auto f = Field(object, key, where);
  if (!f.ok()) return f.status();
  if (!(*f)->is_number()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, ".", key, " must be a number"));
  }
  return (*f)->get<double>();
}

absl::StatusOr<int> IntValue(const json& value, const std::string& what) {
  if (!value.is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " must be an integer"));
  }
  const auto v = value.get<long long>();
  if (v < -2'000'000'000LL || v > 2'000'000'000LL) {
    return absl::InvalidArgumentError(absl::StrCat(what, " is out of range"));
  }
  return static_cast<int>(v);
}

absl::StatusOr<std::vector<int>> IntArray(const json& value,
                                          const std::string& what) {
  if (!value.is_array()) {
    return absl::InvalidArgumentError(absl::StrCat(what, " must be an array"));
  }
  std::vector<int> out;
  for (const json& v : value) {
    auto x = IntValue(v, what);
    if (!x.ok()) return x.status();
    out.push_back(*x);
  }
  return out;
}

}  // namespace

absl::Status CheckKeys(const json& object,
                       std::initializer_list<std::string_view> allowed,
                       const std::string& where) {
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat(where, " must be a JSON object"));
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": unknown field '", key, "'"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Instance> InstanceFromJson(const json& doc) {
  if (auto st = CheckKeys(doc, {"catalog", "config", "bids"}, "instance");
      !st.ok()) {
    return st;
  }

  auto catalog_json = Field(doc, "catalog", "instance");
  if (!catalog_json.ok()) return catalog_json.status();
  if (auto st = CheckKeys(**catalog_json, {"supply"}, "catalog"); !st.ok()) {
    return st;
  }
  auto supply_json = Field(**catalog_json, "supply", "catalog");
  if (!supply_json.ok()) return supply_json.status();
  auto supply = IntArray(**supply_json, "catalog.supply");
  if (!supply.ok()) return supply.status();
  auto catalog = VmCatalog::Create(std::move(*supply));
  if (!catalog.ok()) return catalog.status();

  auto config_json = Field(doc, "config", "instance");
  if (!config_json.ok()) return config_json.status();
  const json& cj = **config_json;
  if (auto st = CheckKeys(
          cj, {"q_max", "v_min", "v_max", "grid_step", "epsilon"}, "config");
      !st.ok()) {
    return st;
  }
  auto q_max_json = Field(cj, "q_max", "config");
  if (!q_max_json.ok()) return q_max_json.status();
  auto q_max = IntValue(**q_max_json, "config.q_max");
  if (!q_max.ok()) return q_max.status();
  auto v_min = NumberField(cj, "v_min", "config");
  if (!v_min.ok()) return v_min.status();
  auto v_max = NumberField(cj, "v_max", "config");
  if (!v_max.ok()) return v_max.status();
  auto step = NumberField(cj, "grid_step", "config");
  if (!step.ok()) return step.status();
  auto epsilon = NumberField(cj, "epsilon", "config");
  if (!epsilon.ok()) return epsilon.status();
  auto config = AuctionConfig::Create(*q_max, *v_min, *v_max, *step, *epsilon);
  if (!config.ok()) return config.status();

  auto bids_json = Field(doc, "bids", "instance");
  if (!bids_json.ok()) return bids_json.status();
  if (!(*bids_json)->is_array()) {
    return absl::InvalidArgumentError("instance.bids must be an array");
  }
  std::vector<BidProfile> bids;
  for (std::size_t j = 0; j < (*bids_json)->size(); ++j) {
    const json& bj = (**bids_json)[j];
    const std::string where = absl::StrCat("bids[", j, "]");
    if (auto st = CheckKeys(bj, {"demands", "unit_bids"}, where); !st.ok()) {
      return st;
    }
    auto demands_json = Field(bj, "demands", where);
    if (!demands_json.ok()) return demands_json.status();
    auto demands = IntArray(**demands_json, where + ".demands");
    if (!demands.ok()) return demands.status();
    auto unit_json = Field(bj, "unit_bids", where);
    if (!unit_json.ok()) return unit_json.status();
    if (!(*unit_json)->is_array()) {
      return absl::InvalidArgumentError(where + ".unit_bids must be an array");
    }
    std::vector<Ticks> unit_bids;
    for (const json& v : **unit_json) {
      if (!v.is_number()) {
        return absl::InvalidArgumentError(where + ".unit_bids must be numbers");
      }
      auto t = config->ToTicks(v.get<double>());
      if (!t.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat(where, ": ", t.status().message()));
      }
      unit_bids.push_back(*t);
    }
    auto bid = BidProfile::Create(std::move(*demands), std::move(unit_bids),
                                  *config);
    if (!bid.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": ", bid.status().message()));
    }
    bids.push_back(std::move(*bid));
  }
  return Instance::Create(std::move(*catalog), std::move(*config),
                          std::move(bids));
}

json InstanceToJson(const Instance& instance) {
  const AuctionConfig& c = instance.config;
  json bids = json::array();
  for (const BidProfile& bid : instance.bids) {
    json unit = json::array();
    for (Ticks t : bid.unit_bids()) unit.push_back(c.ToMoney(t));
    bids.push_back({{"demands", bid.demands()}, {"unit_bids", unit}});
  }
  return {{"catalog", {{"supply", instance.catalog.supply()}}},
          {"config",
           {{"q_max", c.q_max()},
            {"v_min", c.v_min()},
            {"v_max", c.v_max()},
            {"grid_step", c.grid_step()},
            {"epsilon", c.epsilon()}}},
          {"bids", bids}};
}

absl::StatusOr<Instance> ParseInstance(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("instance is not valid JSON");
  }
  return InstanceFromJson(doc);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::StatusOr<Instance> ReadInstanceFile(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseInstance(*text);
}

json OutcomeToJson(const AuctionOutcome& outcome, const AuctionConfig& config) {
  json out = {{"winners", outcome.winners},
              {"allocation", outcome.allocation},
              {"payments", outcome.payments},
              {"revenue", outcome.revenue}};
  if (outcome.clearing_prices) {
    json prices = json::array();
    for (Ticks t : outcome.clearing_prices->prices) {
      prices.push_back(config.ToMoney(t));
    }
    out["clearing_prices"] = prices;
  } else {
    out["clearing_prices"] = nullptr;
  }
  return out;
}

json ResultToJson(const MechanismResult& result, const AuctionConfig& config) {
  json stages = json::array();
  for (const StageBudget& s : result.stages) {
    stages.push_back({{"first_type", s.first_type},
                      {"type_count", s.type_count},
                      {"epsilon", s.epsilon},
                      {"sensitivity", s.sensitivity}});
  }
  return {{"outcome", OutcomeToJson(result.outcome, config)},
          {"stages", stages}};
}

}  // namespace dpca
