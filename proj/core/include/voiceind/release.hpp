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

#ifndef VOICEIND_RELEASE_HPP_
#define VOICEIND_RELEASE_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voiceind/mechanism.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/voiceprint.hpp"

namespace voiceind {

// Seam for the speech-synthesis stage.  Implementations must be
// deterministic functions of (content, voiceprint).
class Synthesizer {
 public:
  virtual ~Synthesizer() = default;
  virtual std::string synthesize(std::string_view content,
                                 const Voiceprint& voice) const = 0;
};

// Default synthesizer: emits the content payload unchanged.
class PassthroughSynthesizer final : public Synthesizer {
 public:
  std::string synthesize(std::string_view content,
                         const Voiceprint&) const override {
    return std::string(content);
  }
};

struct ProtectedUtterance {
  std::string id;
  std::string content;
  Voiceprint released_voiceprint;
  std::string source_candidate_id;
  double selection_probability = 0.0;
};

struct ReleaseOptions {
  unsigned threads = 0;  // 0 = machine parallelism
  // Reuse one draw per voiceprint id, so repeated utterances of one
  // speaker map to the same candidate.
  bool sticky = false;
};

// Online pipeline: builds a fresh distribution over all n candidates per
// utterance (Theta(n) distance evaluations each), samples one candidate
// and synthesizes.  Utterance i draws from rng.derive(i), so output is
// independent of the thread count and of input chunking.
std::vector<ProtectedUtterance> release_feature_level(
    std::span<const UtteranceRecord> utterances, const VoiceprintDatabase& db,
    PrivacyBudget eps, const Synthesizer& syn, const SeededRng& rng,
    const ReleaseOptions& options = {});

// Precomputed sampling structure: one cumulative selection table per
// database record, built offline in O(n^2) so that serving an enrolled
// record needs no distance computation online.  Immutable after build.
class ReleaseModel {
 public:
  static ReleaseModel build(const VoiceprintDatabase& db, PrivacyBudget eps,
                            unsigned threads = 0);

  const VoiceprintDatabase& database() const noexcept { return *db_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t size() const noexcept { return db_->size(); }
  // Unix time of the offline build; 0 for models read back from a file.
  std::int64_t built_at_unix() const noexcept { return built_at_unix_; }

  // Cumulative selection weights for record i, candidates in database
  // order; reproduces exactly the build_distribution probabilities.
  std::span<const double> table(std::size_t i) const;
  double probability(std::size_t record, std::size_t candidate) const;

  // Versioned text serialization: magic header, dim, n, epsilon, the
  // records and the tables at full (round-trip) precision.
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static ReleaseModel load(std::istream& in);
  static ReleaseModel load_file(const std::string& path);

 private:
  ReleaseModel(std::shared_ptr<const VoiceprintDatabase> db, double epsilon,
               std::vector<double> tables, std::int64_t built_at_unix)
      : db_(std::move(db)),
        epsilon_(epsilon),
        tables_(std::move(tables)),
        built_at_unix_(built_at_unix) {}

  std::shared_ptr<const VoiceprintDatabase> db_;
  double epsilon_;
  std::vector<double> tables_;  // row-major n x n cumulative weights
  std::int64_t built_at_unix_;
};

// Serves utterances from the precomputed tables: per utterance one id
// lookup plus one table draw.  Every utterance id must be enrolled in the
// model's database; unknown ids are an error (the caller should fall back
// to the feature-level pipeline for unseen speakers).
std::vector<ProtectedUtterance> release_model_level(
    std::span<const UtteranceRecord> utterances, const ReleaseModel& model,
    const Synthesizer& syn, const SeededRng& rng,
    const ReleaseOptions& options = {});

// Whole-database release: every record perturbed independently.  The
// output database has the same ids, order and dimension as the input;
// every released vector is a member of the input candidate set.
VoiceprintDatabase release_database(const VoiceprintDatabase& db,
                                    PrivacyBudget eps, const SeededRng& rng,
                                    unsigned threads = 0);

// Released records in the embedding text format (ids = utterance ids).
void write_released_database(std::span<const ProtectedUtterance> released,
                             std::ostream& out);
// `utterance_id,candidate_id,probability` rows.
void write_provenance_csv(std::span<const ProtectedUtterance> released,
                          std::ostream& out);
// Content sidecar for the released utterances (base64 payloads).
void write_content_sidecar(std::span<const ProtectedUtterance> released,
                           std::ostream& out);

}  // namespace voiceind

#endif  // VOICEIND_RELEASE_HPP_
