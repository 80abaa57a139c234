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

#ifndef DPCA_EXPMECH_H_
#define DPCA_EXPMECH_H_

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpca {

using Rng = std::mt19937_64;

// Scores of the candidate outputs of one exponential-mechanism invocation.
// Outputs are identified by their position in `scores`.
struct ScoredOutcomes {
  std::vector<double> scores;
  double sensitivity = 1;  // same unit as the scores
  double budget = 1;       // epsilon spent by this invocation
};

absl::Status Validate(const ScoredOutcomes& s);

// Pr[k] = exp(budget * score_k / (2 * sensitivity)) / normalizer, computed
// with the maximum exponent shifted to zero. Entries whose exponent lies
// more than ~745 below the maximum underflow to 0.
absl::StatusOr<std::vector<double>> Distribution(const ScoredOutcomes& s);

// Unchecked core of Distribution().
std::vector<double> ExponentialWeights(std::span<const double> scores,
                                       double sensitivity, double budget);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// Inverse-CDF draw: the first index whose cumulative mass exceeds one uniform
// variate. Zero-probability entries are never returned.
std::size_t SampleIndex(std::span<const double> probabilities, Rng& rng);

absl::StatusOr<std::size_t> Sample(const ScoredOutcomes& s, Rng& rng);

}  // namespace dpca

#endif  // DPCA_EXPMECH_H_
