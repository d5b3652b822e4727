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

#ifndef VOICEIND_SYNTHETIC_HPP_
#define VOICEIND_SYNTHETIC_HPP_

#include <cstddef>
#include <string>

#include "voiceind/rng.hpp"
#include "voiceind/voiceprint.hpp"

namespace voiceind {

// Synthetic speaker population: per speaker one mean direction drawn
// uniformly on the unit sphere, per utterance the mean plus Gaussian
// jitter of total expected squared norm 1/concentration, renormalized.
// Large concentration collapses a speaker's utterances onto its mean.
struct PopulationSpec {
  std::size_t speakers = 40;
  std::size_t utterances_per_speaker = 1;
  std::size_t dim = 512;
  double concentration = 100.0;
};

// Record ids are `s<speaker>` with one utterance per speaker, and
// `s<speaker>-u<utterance>` otherwise.  Deterministic in (spec, seed).
VoiceprintDatabase generate_population(const PopulationSpec& spec,
                                       const SeededRng& rng);

// Uniformly random unit direction.
std::vector<double> random_direction(std::size_t dim, SeededRng& rng);

// n random unit-direction records with ids `<prefix><index>`.
VoiceprintDatabase random_database(std::size_t n, std::size_t dim,
                                   const SeededRng& rng,
                                   const std::string& id_prefix = "r");

}  // namespace voiceind

#endif  // VOICEIND_SYNTHETIC_HPP_
