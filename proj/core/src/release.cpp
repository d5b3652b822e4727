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

#include "voiceind/release.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "voiceind/error.hpp"
#include "voiceind/parallel.hpp"
#include "voiceind/textio.hpp"

namespace voiceind {

namespace {

constexpr std::string_view kModelMagic = "VIRM1";

struct Draw {
  std::size_t candidate = 0;
  double probability = 0.0;
};

ProtectedUtterance make_protected(const UtteranceRecord& utterance,
                                  const VoiceprintDatabase& db,
                                  const Draw& draw, const Synthesizer& syn) {
  const Voiceprint& candidate = db.record(draw.candidate);
  std::string content;
  try {
    content = syn.synthesize(utterance.content(), candidate);
  } catch (const std::exception& e) {
    throw Error("synthesizer failed for utterance '" + utterance.id() +
                "': " + e.what());
  }
  return ProtectedUtterance{utterance.id(), std::move(content), candidate,
                            candidate.id(), draw.probability};
}

void check_dimensions(std::span<const UtteranceRecord> utterances,
                      const VoiceprintDatabase& db) {
  for (const UtteranceRecord& u : utterances) {
    if (u.voiceprint().dim() != db.dim()) {
      throw ValidationError("utterance '" + u.id() + "' has dimension " +
                            std::to_string(u.voiceprint().dim()) +
                            ", database has " + std::to_string(db.dim()));
    }
  }
}

// ProtectedUtterance has no default state, so parallel producers fill
// optional slots that are unwrapped afterwards.
std::vector<ProtectedUtterance> collect(
    std::vector<std::optional<ProtectedUtterance>>&& slots) {
  std::vector<ProtectedUtterance> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace

std::vector<ProtectedUtterance> release_feature_level(
    std::span<const UtteranceRecord> utterances, const VoiceprintDatabase& db,
    PrivacyBudget eps, const Synthesizer& syn, const SeededRng& rng,
    const ReleaseOptions& options) {
  check_dimensions(utterances, db);
  const std::size_t count = utterances.size();
  std::vector<std::optional<ProtectedUtterance>> slots(count);
  if (count == 0) return {};

  auto draw_for = [&](std::size_t i) {
    const PerturbationDistribution dist =
        build_distribution(utterances[i].voiceprint(), db, eps);
    const std::vector<double> cum = dist.cumulative();
    SeededRng stream = rng.derive(i);
    const std::size_t j = sample_index(cum, stream.next_unit());
    return Draw{j, dist.probabilities()[j]};
  };

  if (!options.sticky) {
    parallel_for(count, options.threads, [&](std::size_t i) {
      slots[i] = make_protected(utterances[i], db, draw_for(i), syn);
    });
    return collect(std::move(slots));
  }

  // Sticky mode: the first utterance of each id owns the draw; later
  // utterances of the same id reuse it.
  std::unordered_map<std::string, std::size_t> owner_of;
  std::vector<std::size_t> owners;
  for (std::size_t i = 0; i < count; ++i) {
    if (owner_of.emplace(utterances[i].id(), i).second) owners.push_back(i);
  }
  std::unordered_map<std::size_t, Draw> draws;
  draws.reserve(owners.size());
  for (const std::size_t i : owners) draws.emplace(i, draw_for(i));

  parallel_for(count, options.threads, [&](std::size_t i) {
    const Draw& draw = draws.at(owner_of.at(utterances[i].id()));
    slots[i] = make_protected(utterances[i], db, draw, syn);
  });
  return collect(std::move(slots));
}

ReleaseModel ReleaseModel::build(const VoiceprintDatabase& db,
                                 PrivacyBudget eps, unsigned threads) {
  const std::size_t n = db.size();
  std::vector<double> tables(n * n);
  parallel_for(n, threads, [&](std::size_t i) {
    const PerturbationDistribution dist =
        build_distribution(db.record(i), db, eps);
    double running = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      running += dist.probabilities()[j];
      tables[i * n + j] = running;
    }
  });
  const std::int64_t now = std::chrono::duration_cast<std::chrono::seconds>(
                               std::chrono::system_clock::now()
                                   .time_since_epoch())
                               .count();
  return ReleaseModel(std::make_shared<VoiceprintDatabase>(db), eps.epsilon(),
                      std::move(tables), now);
}

std::span<const double> ReleaseModel::table(std::size_t i) const {
  const std::size_t n = db_->size();
  return std::span<const double>(tables_.data() + i * n, n);
}

double ReleaseModel::probability(std::size_t record,
                                 std::size_t candidate) const {
  const auto t = table(record);
  return candidate == 0 ? t[0] : t[candidate] - t[candidate - 1];
}

void ReleaseModel::save(std::ostream& out) const {
  const std::size_t n = db_->size();
  out << kModelMagic << "\n";
  out << "dim " << db_->dim() << "\n";
  out << "n " << n << "\n";
  out << "epsilon " << format_roundtrip(epsilon_) << "\n";
  for (const Voiceprint& v : db_->records()) {
    out << "record " << format_voiceprint_line(v) << "\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    out << "table";
    for (const double t : table(i)) out << ' ' << format_roundtrip(t);
    out << "\n";
  }
}

void ReleaseModel::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  save(out);
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

namespace {

double parse_model_double(const std::string& token, std::size_t line) {
  double value = 0.0;
  const auto result =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
    throw ParseError(line, "malformed number '" + token + "' in model file");
  }
  return value;
}

}  // namespace

ReleaseModel ReleaseModel::load(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;

  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) {
      throw ParseError(line_number, "truncated model file");
    }
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  next_line();
  if (line != kModelMagic) {
    throw ParseError(line_number,
                     "not a release model file (expected magic '" +
                         std::string(kModelMagic) + "')");
  }
  auto read_field = [&](const char* key) -> std::string {
    next_line();
    std::istringstream fields(line);
    std::string name;
    std::string value;
    fields >> name >> value;
    if (name != key || value.empty()) {
      throw ParseError(line_number, "expected '" + std::string(key) +
                                        " <value>' in model file");
    }
    return value;
  };

  const std::size_t dim = std::stoul(read_field("dim"));
  const std::size_t n = std::stoul(read_field("n"));
  const double epsilon = parse_model_double(read_field("epsilon"), line_number);
  PrivacyBudget eps(epsilon);

  std::vector<Voiceprint> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    next_line();
    if (line.rfind("record ", 0) != 0) {
      throw ParseError(line_number, "expected a record line in model file");
    }
    records.push_back(parse_voiceprint(std::string_view(line).substr(7), dim,
                                       line_number));
  }
  auto db = std::make_shared<VoiceprintDatabase>(std::move(records));

  std::vector<double> tables(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    next_line();
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag != "table") {
      throw ParseError(line_number, "expected a table line in model file");
    }
    std::string token;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(fields >> token)) {
        throw ParseError(line_number, "table row " + std::to_string(i) +
                                          " has fewer than " +
                                          std::to_string(n) + " entries");
      }
      tables[i * n + j] = parse_model_double(token, line_number);
    }
    if (fields >> token) {
      throw ParseError(line_number, "table row " + std::to_string(i) +
                                        " has more than " + std::to_string(n) +
                                        " entries");
    }
    if (std::abs(tables[i * n + n - 1] - 1.0) > 1e-9) {
      throw ParseError(line_number,
                       "table row " + std::to_string(i) + " does not end at 1");
    }
  }
  return ReleaseModel(std::move(db), epsilon, std::move(tables), 0);
}

ReleaseModel ReleaseModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  try {
    return load(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.what());
  }
}

std::vector<ProtectedUtterance> release_model_level(
    std::span<const UtteranceRecord> utterances, const ReleaseModel& model,
    const Synthesizer& syn, const SeededRng& rng,
    const ReleaseOptions& options) {
  const VoiceprintDatabase& db = model.database();
  check_dimensions(utterances, db);

  const std::size_t count = utterances.size();
  std::vector<std::size_t> enrolled(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto index = db.index_of(utterances[i].id());
    if (!index) {
      throw ValidationError(
          "unknown record id \"" + utterances[i].id() +
          "\": the precomputed model only serves enrolled records; "
          "use the feature-level pipeline for new speakers");
    }
    enrolled[i] = *index;
  }

  std::vector<std::optional<ProtectedUtterance>> slots(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    SeededRng stream = rng.derive(i);
    const auto table = model.table(enrolled[i]);
    const std::size_t j = sample_index(table, stream.next_unit());
    slots[i] = make_protected(utterances[i], db,
                              Draw{j, model.probability(enrolled[i], j)}, syn);
  });
  return collect(std::move(slots));
}

VoiceprintDatabase release_database(const VoiceprintDatabase& db,
                                    PrivacyBudget eps, const SeededRng& rng,
                                    unsigned threads) {
  const std::vector<UtteranceRecord> utterances = utterances_from_database(db);
  const PassthroughSynthesizer syn;
  ReleaseOptions options;
  options.threads = threads;
  const std::vector<ProtectedUtterance> released =
      release_feature_level(utterances, db, eps, syn, rng, options);

  std::vector<Voiceprint> records;
  records.reserve(released.size());
  for (const ProtectedUtterance& u : released) {
    records.emplace_back(u.id,
                         std::vector<double>(u.released_voiceprint.coords().begin(),
                                             u.released_voiceprint.coords().end()));
  }
  return VoiceprintDatabase(std::move(records));
}

void write_released_database(std::span<const ProtectedUtterance> released,
                             std::ostream& out) {
  const std::size_t dim =
      released.empty() ? 0 : released.front().released_voiceprint.dim();
  out << "# records=" << released.size() << " dim=" << dim << "\n";
  for (const ProtectedUtterance& u : released) {
    out << u.id;
    for (const double c : u.released_voiceprint.coords()) {
      out << ' ' << format_roundtrip(c);
    }
    out << '\n';
  }
}

void write_provenance_csv(std::span<const ProtectedUtterance> released,
                          std::ostream& out) {
  out << "utterance_id,candidate_id,probability\n";
  for (const ProtectedUtterance& u : released) {
    out << u.id << ',' << u.source_candidate_id << ','
        << format_sig12(u.selection_probability) << '\n';
  }
}

void write_content_sidecar(std::span<const ProtectedUtterance> released,
                           std::ostream& out) {
  for (const ProtectedUtterance& u : released) {
    out << u.id << '\t' << base64_encode(u.content) << '\n';
  }
}

}  // namespace voiceind
