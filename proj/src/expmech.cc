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

#include "dpca/expmech.h"

#include <algorithm>
#include <cmath>

namespace dpca {

absl::Status Validate(const ScoredOutcomes& s) {
  if (s.scores.empty()) {
    return absl::InvalidArgumentError("no outcomes to choose from");
  }
  if (!(std::isfinite(s.sensitivity) && s.sensitivity > 0)) {
    return absl::InvalidArgumentError("sensitivity must be positive");
  }
  if (!(std::isfinite(s.budget) && s.budget > 0)) {
    return absl::InvalidArgumentError("budget must be positive");
  }
  for (double v : s.scores) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("scores must be finite");
    }
  }
  return absl::OkStatus();
}

std::vector<double> ExponentialWeights(std::span<const double> scores,
                                       double sensitivity, double budget) {
  const double scale = budget / (2.0 * sensitivity);
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out(scores.size());
  double total = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    out[k] = std::exp(scale * (scores[k] - top));
    total += out[k];
  }
  // total >= 1 because the maximum contributes exp(0).
  for (double& p : out) p /= total;
  return out;
}

absl::StatusOr<std::vector<double>> Distribution(const ScoredOutcomes& s) {
  if (absl::Status st = Validate(s); !st.ok()) return st;
  return ExponentialWeights(s.scores, s.sensitivity, s.budget);
}

double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t SampleIndex(std::span<const double> probabilities, Rng& rng) {
  const double u = UniformUnit(rng);
  double cumulative = 0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0) continue;
    cumulative += probabilities[k];
    last_positive = k;
    if (u < cumulative) return k;
  }
  // Rounding left the total marginally below u.
  return last_positive;
}

absl::StatusOr<std::size_t> Sample(const ScoredOutcomes& s, Rng& rng) {
  auto dist = Distribution(s);
  if (!dist.ok()) return dist.status();
  return SampleIndex(*dist, rng);
}

}  // namespace dpca
