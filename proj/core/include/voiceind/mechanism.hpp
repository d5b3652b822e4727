// Copyright 2026 The Voiceind Authors
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

#ifndef VOICEIND_MECHANISM_HPP_
#define VOICEIND_MECHANISM_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "voiceind/metric.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/voiceprint.hpp"

namespace voiceind {

// Privacy budget in units of inverse angular distance.  Must be finite
// and >= 0; zero means uniform release (maximal privacy).
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);
  double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
};

// The normalized selection distribution over every candidate of one
// database for one input voiceprint.  Candidate order equals database
// order; probabilities are positive, sum to 1, and are non-increasing in
// the candidate's distance from the input.
class PerturbationDistribution {
 public:
  PerturbationDistribution(std::vector<std::string> candidate_ids,
                           std::vector<double> probabilities,
                           std::vector<double> center_distances,
                           PrivacyBudget epsilon);

  std::size_t size() const noexcept { return probabilities_.size(); }
  const std::vector<std::string>& candidate_ids() const noexcept {
    return candidate_ids_;
  }
  const std::vector<double>& probabilities() const noexcept {
    return probabilities_;
  }
  // d(x0, candidate i) for every candidate.
  const std::vector<double>& center_distances() const noexcept {
    return center_distances_;
  }
  double epsilon() const noexcept { return epsilon_.epsilon(); }

  // Prefix sums of the probabilities; the last entry is 1 up to rounding.
  std::vector<double> cumulative() const;

 private:
  std::vector<std::string> candidate_ids_;
  std::vector<double> probabilities_;
  std::vector<double> center_distances_;
  PrivacyBudget epsilon_;
};

// Pr(candidate i | x0) = exp(-eps * d(x0, x_i)) / sum_j exp(-eps * d(x0, x_j)).
//
// The exponent is shifted by the minimum distance before exponentiating,
// which leaves the normalized probabilities unchanged but keeps the
// arithmetic finite for epsilon up to ~1e6.  x0 need not be a member of
// the database.
PerturbationDistribution build_distribution(const Voiceprint& x0,
                                            const VoiceprintDatabase& db,
                                            PrivacyBudget eps);

// Inverse-CDF selection: the smallest index whose cumulative weight is
// >= u.  A draw that lands exactly on a boundary resolves to the lower
// index.  u must be in [0, 1).
std::size_t sample_index(std::span<const double> cumulative, double u);

std::size_t sample_index(const PerturbationDistribution& dist, SeededRng& rng);

// Draws one candidate id according to the distribution.
std::string sample(const PerturbationDistribution& dist, SeededRng& rng);

// Builds the distribution for x0 and draws once.  The result is always a
// member record of db (plausible deniability: the output set is the
// candidate set).
Voiceprint perturb(const Voiceprint& x0, const VoiceprintDatabase& db,
                   PrivacyBudget eps, SeededRng& rng);

}  // namespace voiceind

#endif  // VOICEIND_MECHANISM_HPP_
