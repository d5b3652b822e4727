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

#include "voiceind/mechanism.hpp"

#include <algorithm>
#include <cmath>

#include "voiceind/error.hpp"

namespace voiceind {

namespace {

// Neumaier compensated sum; keeps the sum-to-one check meaningful for
// large candidate sets.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

}  // namespace

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw ValidationError("epsilon must be finite and >= 0");
  }
}

PerturbationDistribution::PerturbationDistribution(
    std::vector<std::string> candidate_ids, std::vector<double> probabilities,
    std::vector<double> center_distances, PrivacyBudget epsilon)
    : candidate_ids_(std::move(candidate_ids)),
      probabilities_(std::move(probabilities)),
      center_distances_(std::move(center_distances)),
      epsilon_(epsilon) {
  if (probabilities_.empty()) {
    throw ValidationError("distribution has no candidates");
  }
  if (candidate_ids_.size() != probabilities_.size() ||
      center_distances_.size() != probabilities_.size()) {
    throw ValidationError("distribution field lengths differ");
  }
  for (const double p : probabilities_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ValidationError("probabilities must be finite and >= 0");
    }
  }
  const double sum = compensated_sum(probabilities_);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("probabilities sum to " + std::to_string(sum) +
                          ", expected 1");
  }
}

std::vector<double> PerturbationDistribution::cumulative() const {
  std::vector<double> cum(probabilities_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    running += probabilities_[i];
    cum[i] = running;
  }
  return cum;
}

PerturbationDistribution build_distribution(const Voiceprint& x0,
                                            const VoiceprintDatabase& db,
                                            PrivacyBudget eps) {
  if (x0.dim() != db.dim()) {
    throw ValidationError("dimension mismatch: input has " +
                          std::to_string(x0.dim()) + ", database has " +
                          std::to_string(db.dim()));
  }
  const std::size_t n = db.size();
  const double x0_selfdot = detail::dot(x0.coords(), x0.coords());

  std::vector<double> distances(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto candidate = db.record(i).coords();
    distances[i] = detail::angular_distance_presq(
        x0.coords(), x0_selfdot, candidate,
        detail::dot(candidate, candidate));
  }

  const double min_distance =
      *std::min_element(distances.begin(), distances.end());
  const double epsilon = eps.epsilon();
  std::vector<double> weights(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = std::exp(-epsilon * (distances[i] - min_distance));
    total += weights[i];
  }
  for (double& w : weights) w /= total;

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const Voiceprint& v : db.records()) ids.push_back(v.id());
  return PerturbationDistribution(std::move(ids), std::move(weights),
                                  std::move(distances), eps);
}

std::size_t sample_index(std::span<const double> cumulative, double u) {
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

std::size_t sample_index(const PerturbationDistribution& dist,
                         SeededRng& rng) {
  const std::vector<double> cum = dist.cumulative();
  return sample_index(cum, rng.next_unit());
}

std::string sample(const PerturbationDistribution& dist, SeededRng& rng) {
  return dist.candidate_ids()[sample_index(dist, rng)];
}

Voiceprint perturb(const Voiceprint& x0, const VoiceprintDatabase& db,
                   PrivacyBudget eps, SeededRng& rng) {
  const PerturbationDistribution dist = build_distribution(x0, db, eps);
  return db.record(sample_index(dist, rng));
}

}  // namespace voiceind
