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

#include "voiceind/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "voiceind/error.hpp"
#include "voiceind/parallel.hpp"
#include "voiceind/textio.hpp"

namespace voiceind {

namespace detail {

double dot(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

double angular_distance_presq(std::span<const double> x, double x_selfdot,
                              std::span<const double> y, double y_selfdot) {
  if (x_selfdot == 0.0 || y_selfdot == 0.0) {
    throw ValidationError("angular distance is undefined for a zero vector");
  }
  // Bit-identical operands are forced to distance 0, so audits never see
  // spurious self-distances from rounding in acos.
  if (x_selfdot == y_selfdot &&
      (x.data() == y.data() || std::equal(x.begin(), x.end(), y.begin()))) {
    return 0.0;
  }
  const double c = dot(x, y) / (std::sqrt(x_selfdot) * std::sqrt(y_selfdot));
  return std::acos(std::clamp(c, -1.0, 1.0)) / std::numbers::pi;
}

}  // namespace detail

double cosine_similarity(std::span<const double> x,
                         std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("dimension mismatch: " + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()));
  }
  const double sx = detail::dot(x, x);
  const double sy = detail::dot(y, y);
  if (sx == 0.0 || sy == 0.0) {
    throw ValidationError("cosine similarity is undefined for a zero vector");
  }
  const double c = detail::dot(x, y) / (std::sqrt(sx) * std::sqrt(sy));
  return std::clamp(c, -1.0, 1.0);
}

double cosine_similarity(const Voiceprint& x, const Voiceprint& y) {
  return cosine_similarity(x.coords(), y.coords());
}

double angular_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("dimension mismatch: " + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()));
  }
  return detail::angular_distance_presq(x, detail::dot(x, x), y,
                                        detail::dot(y, y));
}

double angular_distance(const Voiceprint& x, const Voiceprint& y) {
  return angular_distance(x.coords(), y.coords());
}

DistanceMatrix DistanceMatrix::compute(const VoiceprintDatabase& db,
                                       unsigned threads) {
  const std::size_t n = db.size();
  std::vector<double> selfdots(n);
  for (std::size_t i = 0; i < n; ++i) {
    selfdots[i] = detail::dot(db.record(i).coords(), db.record(i).coords());
  }

  std::vector<double> entries(n * n, 0.0);
  // Row i owns cells (i, j > i) and their mirrors, so rows can be
  // computed in parallel without overlapping writes.
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = detail::angular_distance_presq(
          db.record(i).coords(), selfdots[i], db.record(j).coords(),
          selfdots[j]);
      entries[i * n + j] = d;
      entries[j * n + i] = d;
    }
  });

  std::vector<std::string> ids;
  ids.reserve(n);
  for (const Voiceprint& v : db.records()) ids.push_back(v.id());
  return DistanceMatrix(n, std::move(ids), std::move(entries));
}

void DistanceMatrix::write_csv(std::ostream& out) const {
  out << "id";
  for (const std::string& id : ids_) out << ',' << id;
  out << '\n';
  for (std::size_t i = 0; i < n_; ++i) {
    out << ids_[i];
    for (std::size_t j = 0; j < n_; ++j) {
      out << ',' << format_sig12(at(i, j));
    }
    out << '\n';
  }
}

}  // namespace voiceind
