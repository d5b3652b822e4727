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

#ifndef VOICEIND_VOICEPRINT_HPP_
#define VOICEIND_VOICEPRINT_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace voiceind {

// One identified speaker embedding.  Immutable after construction; the
// constructor rejects empty ids, empty/all-zero vectors and non-finite
// coordinates.  Vectors are stored as given (not length-normalized):
// angular distance is scale-invariant, so no normalization convention is
// imposed on inputs.
class Voiceprint {
 public:
  Voiceprint(std::string id, std::vector<double> coords);

  const std::string& id() const noexcept { return id_; }
  std::span<const double> coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }

 private:
  std::string id_;
  std::vector<double> coords_;
};

// Returns v scaled to unit Euclidean norm (direction preserved).
Voiceprint normalize(const Voiceprint& v);

// The candidate set of a release: every record shares one dimension, ids
// are unique, and there is at least one record.  Immutable after
// construction and safe for concurrent reads.
class VoiceprintDatabase {
 public:
  explicit VoiceprintDatabase(std::vector<Voiceprint> records);

  std::size_t size() const noexcept { return records_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Voiceprint& record(std::size_t i) const { return records_.at(i); }
  const std::vector<Voiceprint>& records() const noexcept { return records_; }
  std::optional<std::size_t> index_of(std::string_view id) const;

 private:
  std::vector<Voiceprint> records_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
};

// An utterance: an opaque content payload plus the voiceprint extracted
// from it.  The utterance id is the voiceprint id by construction.
class UtteranceRecord {
 public:
  UtteranceRecord(std::string content, Voiceprint voiceprint)
      : content_(std::move(content)), voiceprint_(std::move(voiceprint)) {}

  const std::string& id() const noexcept { return voiceprint_.id(); }
  const std::string& content() const noexcept { return content_; }
  const Voiceprint& voiceprint() const noexcept { return voiceprint_; }

 private:
  std::string content_;
  Voiceprint voiceprint_;
};

// Parses one embedding record line: `<id><sep><c1><sep>...<sep><cdim>`
// with sep either whitespace or comma.  expected_dim == 0 accepts any
// positive coordinate count; line_number is used in error messages only.
Voiceprint parse_voiceprint(std::string_view line, std::size_t expected_dim = 0,
                            std::size_t line_number = 0);

// Reads an embedding file: one record per line, lines starting with `#`
// are comments.  A comment of the form `# records=<n> dim=<d>` is treated
// as a header and validated against the actual content.  dim == 0 infers
// the dimension from the first record.
VoiceprintDatabase load_database(std::istream& in, std::size_t dim = 0);
VoiceprintDatabase load_database_file(const std::string& path,
                                      std::size_t dim = 0);

// Writes the `# records=... dim=...` header followed by one line per
// record.  Coordinates use the shortest decimal form that parses back to
// the identical double, so load(save(db)) reproduces db exactly.
void save_database(const VoiceprintDatabase& db, std::ostream& out);
void save_database_file(const VoiceprintDatabase& db, const std::string& path);

std::string format_voiceprint_line(const Voiceprint& v);

// Content sidecar (`<id><TAB><base64 payload>` per line, `#` comments).
// Returns one utterance per database record, in database order, with empty
// content for records absent from the sidecar.  A sidecar id without a
// database record is an error.
std::vector<UtteranceRecord> load_utterances(const VoiceprintDatabase& db,
                                             std::istream& sidecar);
std::vector<UtteranceRecord> load_utterances_file(const VoiceprintDatabase& db,
                                                  const std::string& path);

// One empty-content utterance per database record, in database order.
std::vector<UtteranceRecord> utterances_from_database(
    const VoiceprintDatabase& db);

}  // namespace voiceind

#endif  // VOICEIND_VOICEPRINT_HPP_
