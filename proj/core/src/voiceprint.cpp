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

#include "voiceind/voiceprint.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "voiceind/error.hpp"
#include "voiceind/textio.hpp"

namespace voiceind {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits on commas when the line contains one, otherwise on whitespace.
// Comma mode keeps empty fields so that a missing id can be diagnosed.
std::vector<std::string_view> split_record(std::string_view line) {
  std::vector<std::string_view> fields;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string_view::npos) {
        fields.push_back(trim(line.substr(start)));
        break;
      }
      fields.push_back(trim(line.substr(start, pos - start)));
      start = pos + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_space(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_space(line[j])) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return fields;
}

double parse_coordinate(std::string_view token, std::size_t position,
                        std::size_t line_number) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw ParseError(line_number, "malformed number '" + std::string(token) +
                                      "' at coordinate " +
                                      std::to_string(position));
  }
  return value;
}

}  // namespace

Voiceprint::Voiceprint(std::string id, std::vector<double> coords)
    : id_(std::move(id)), coords_(std::move(coords)) {
  if (id_.empty()) throw ValidationError("empty id");
  if (coords_.empty()) throw ValidationError("empty vector");
  bool all_zero = true;
  for (const double c : coords_) {
    if (!std::isfinite(c)) {
      throw ValidationError("non-finite coordinate in record '" + id_ + "'");
    }
    if (c != 0.0) all_zero = false;
  }
  if (all_zero) {
    throw ValidationError("zero vector in record '" + id_ + "'");
  }
}

Voiceprint normalize(const Voiceprint& v) {
  double sq = 0.0;
  for (const double c : v.coords()) sq += c * c;
  const double norm = std::sqrt(sq);
  if (norm == 0.0) throw ValidationError("cannot normalize a zero vector");
  std::vector<double> scaled(v.coords().begin(), v.coords().end());
  for (double& c : scaled) c /= norm;
  return Voiceprint(v.id(), std::move(scaled));
}

VoiceprintDatabase::VoiceprintDatabase(std::vector<Voiceprint> records)
    : records_(std::move(records)) {
  if (records_.empty()) throw ValidationError("database has no records");
  dim_ = records_.front().dim();
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Voiceprint& r = records_[i];
    if (r.dim() != dim_) {
      throw ValidationError("dimension mismatch in record '" + r.id() +
                            "': got " + std::to_string(r.dim()) +
                            ", expected " + std::to_string(dim_));
    }
    if (!index_.emplace(r.id(), i).second) {
      throw ValidationError("duplicate id \"" + r.id() + "\"");
    }
  }
}

std::optional<std::size_t> VoiceprintDatabase::index_of(
    std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Voiceprint parse_voiceprint(std::string_view line, std::size_t expected_dim,
                            std::size_t line_number) {
  const auto fields = split_record(line);
  if (fields.empty()) throw ParseError(line_number, "empty record line");
  if (fields.front().empty()) throw ParseError(line_number, "empty id");
  if (fields.size() < 2) {
    throw ParseError(line_number, "record '" + std::string(fields.front()) +
                                      "' has no coordinates");
  }
  const std::size_t count = fields.size() - 1;
  if (expected_dim != 0 && count != expected_dim) {
    throw ParseError(line_number,
                     "wrong coordinate count in record '" +
                         std::string(fields.front()) + "': got " +
                         std::to_string(count) + ", expected " +
                         std::to_string(expected_dim));
  }
  std::vector<double> coords;
  coords.reserve(count);
  for (std::size_t i = 1; i < fields.size(); ++i) {
    if (fields[i].empty()) {
      throw ParseError(line_number,
                       "empty field at coordinate " + std::to_string(i));
    }
    coords.push_back(parse_coordinate(fields[i], i, line_number));
  }
  try {
    return Voiceprint(std::string(fields.front()), std::move(coords));
  } catch (const ValidationError& e) {
    throw ParseError(line_number, e.what());
  }
}

namespace {

// `# records=<n> dim=<d>`; returns false for ordinary comments.
bool parse_header_comment(std::string_view comment, std::size_t* records,
                          std::size_t* dim) {
  comment = trim(comment);
  if (comment.rfind("records=", 0) != 0) return false;
  std::size_t r = 0;
  std::size_t d = 0;
  std::istringstream fields{std::string(comment)};
  std::string tok;
  bool have_r = false;
  bool have_d = false;
  while (fields >> tok) {
    if (tok.rfind("records=", 0) == 0) {
      r = std::stoul(tok.substr(8));
      have_r = true;
    } else if (tok.rfind("dim=", 0) == 0) {
      d = std::stoul(tok.substr(4));
      have_d = true;
    }
  }
  if (!have_r || !have_d) return false;
  *records = r;
  *dim = d;
  return true;
}

}  // namespace

VoiceprintDatabase load_database(std::istream& in, std::size_t dim) {
  std::vector<Voiceprint> records;
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  std::size_t header_records = 0;
  std::size_t header_dim = 0;
  std::size_t expected_dim = dim;

  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      std::size_t r = 0;
      std::size_t d = 0;
      if (!have_header && parse_header_comment(view.substr(1), &r, &d)) {
        have_header = true;
        header_records = r;
        header_dim = d;
        if (expected_dim == 0) {
          expected_dim = d;
        } else if (d != expected_dim) {
          throw ParseError(line_number,
                           "header dim " + std::to_string(d) +
                               " does not match expected dimension " +
                               std::to_string(expected_dim));
        }
      }
      continue;
    }
    Voiceprint v = parse_voiceprint(view, expected_dim, line_number);
    if (expected_dim == 0) expected_dim = v.dim();
    records.push_back(std::move(v));
  }

  if (records.empty()) throw ParseError(line_number, "empty embedding stream");
  if (have_header && header_records != records.size()) {
    throw ParseError(line_number,
                     "header declares " + std::to_string(header_records) +
                         " records but the file contains " +
                         std::to_string(records.size()));
  }
  (void)header_dim;
  try {
    return VoiceprintDatabase(std::move(records));
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
}

VoiceprintDatabase load_database_file(const std::string& path,
                                      std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding file '" + path + "'");
  try {
    return load_database(in, dim);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

std::string format_voiceprint_line(const Voiceprint& v) {
  std::string line = v.id();
  for (const double c : v.coords()) {
    line.push_back(' ');
    line += format_roundtrip(c);
  }
  return line;
}

void save_database(const VoiceprintDatabase& db, std::ostream& out) {
  out << "# records=" << db.size() << " dim=" << db.dim() << "\n";
  for (const Voiceprint& v : db.records()) {
    out << format_voiceprint_line(v) << "\n";
  }
}

void save_database_file(const VoiceprintDatabase& db,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embedding file '" + path + "'");
  save_database(db, out);
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

std::vector<UtteranceRecord> load_utterances(const VoiceprintDatabase& db,
                                             std::istream& sidecar) {
  std::unordered_map<std::string, std::string> contents;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(sidecar, line)) {
    ++line_number;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(line_number, "sidecar line has no TAB separator");
    }
    const std::string id(trim(view.substr(0, tab)));
    if (id.empty()) throw ParseError(line_number, "empty id");
    if (!db.index_of(id)) {
      throw ParseError(line_number,
                       "sidecar id \"" + id + "\" is not in the database");
    }
    std::string payload;
    try {
      payload = base64_decode(trim(view.substr(tab + 1)));
    } catch (const Error& e) {
      throw ParseError(line_number, e.what());
    }
    if (!contents.emplace(id, std::move(payload)).second) {
      throw ParseError(line_number, "duplicate sidecar id \"" + id + "\"");
    }
  }

  std::vector<UtteranceRecord> utterances;
  utterances.reserve(db.size());
  for (const Voiceprint& v : db.records()) {
    const auto it = contents.find(v.id());
    utterances.emplace_back(it == contents.end() ? std::string() : it->second,
                            v);
  }
  return utterances;
}

std::vector<UtteranceRecord> load_utterances_file(const VoiceprintDatabase& db,
                                                  const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sidecar file '" + path + "'");
  try {
    return load_utterances(db, in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

std::vector<UtteranceRecord> utterances_from_database(
    const VoiceprintDatabase& db) {
  std::vector<UtteranceRecord> utterances;
  utterances.reserve(db.size());
  for (const Voiceprint& v : db.records()) {
    utterances.emplace_back(std::string(), v);
  }
  return utterances;
}

}  // namespace voiceind
