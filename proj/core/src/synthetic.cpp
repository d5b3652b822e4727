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

#include "voiceind/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "voiceind/error.hpp"

namespace voiceind {

namespace {

std::vector<double> gaussian_vector(std::size_t dim, SeededRng& rng) {
  std::vector<double> v(dim);
  for (double& c : v) c = rng.next_gaussian();
  return v;
}

void normalize_in_place(std::vector<double>& v) {
  double sq = 0.0;
  for (const double c : v) sq += c * c;
  const double norm = std::sqrt(sq);
  for (double& c : v) c /= norm;
}

std::string zero_padded(std::size_t index, std::size_t width) {
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

std::string padded_index(char prefix, std::size_t index, std::size_t total) {
  std::size_t width = 1;
  for (std::size_t rest = total; rest >= 10; rest /= 10) ++width;
  width = std::max<std::size_t>(width, prefix == 's' ? 3 : 2);
  return std::string(1, prefix) + zero_padded(index, width);
}

}  // namespace

std::vector<double> random_direction(std::size_t dim, SeededRng& rng) {
  for (;;) {
    std::vector<double> v = gaussian_vector(dim, rng);
    double sq = 0.0;
    for (const double c : v) sq += c * c;
    if (sq > 1e-24) {
      const double norm = std::sqrt(sq);
      for (double& c : v) c /= norm;
      return v;
    }
  }
}

VoiceprintDatabase generate_population(const PopulationSpec& spec,
                                       const SeededRng& rng) {
  if (spec.speakers == 0) throw ValidationError("speaker count must be >= 1");
  if (spec.utterances_per_speaker == 0) {
    throw ValidationError("utterances per speaker must be >= 1");
  }
  if (spec.dim == 0) throw ValidationError("dimension must be >= 1");
  if (!(spec.concentration > 0.0)) {
    throw ValidationError("concentration must be > 0");
  }

  // Per-utterance jitter has expected squared norm 1/concentration, so the
  // typical offset angle from the speaker mean is ~atan(1/sqrt(kappa)).
  const double jitter_scale =
      1.0 / std::sqrt(spec.concentration * static_cast<double>(spec.dim));

  std::vector<Voiceprint> records;
  records.reserve(spec.speakers * spec.utterances_per_speaker);
  for (std::size_t s = 0; s < spec.speakers; ++s) {
    SeededRng mean_rng = rng.derive(2 * s);
    const std::vector<double> mean = random_direction(spec.dim, mean_rng);
    const std::string speaker_id = padded_index('s', s + 1, spec.speakers);

    for (std::size_t u = 0; u < spec.utterances_per_speaker; ++u) {
      SeededRng jitter_rng = rng.derive(2 * s + 1).derive(u);
      std::vector<double> v = mean;
      for (double& c : v) c += jitter_scale * jitter_rng.next_gaussian();
      normalize_in_place(v);

      std::string id = speaker_id;
      if (spec.utterances_per_speaker > 1) {
        id += "-" + padded_index('u', u + 1, spec.utterances_per_speaker);
      }
      records.emplace_back(std::move(id), std::move(v));
    }
  }
  return VoiceprintDatabase(std::move(records));
}

VoiceprintDatabase random_database(std::size_t n, std::size_t dim,
                                   const SeededRng& rng,
                                   const std::string& id_prefix) {
  if (n == 0) throw ValidationError("record count must be >= 1");
  if (dim == 0) throw ValidationError("dimension must be >= 1");
  std::vector<Voiceprint> records;
  records.reserve(n);
  std::size_t width = 1;
  for (std::size_t rest = n; rest >= 10; rest /= 10) ++width;
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng stream = rng.derive(i);
    records.emplace_back(id_prefix + zero_padded(i, width),
                         random_direction(dim, stream));
  }
  return VoiceprintDatabase(std::move(records));
}

}  // namespace voiceind
