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

#ifndef VOICEIND_METRIC_HPP_
#define VOICEIND_METRIC_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "voiceind/voiceprint.hpp"

namespace voiceind {

// cos<x,y> / (|x||y|), clamped into [-1, 1] so that floating-point drift
// for near-parallel vectors can never push acos out of its domain.
double cosine_similarity(std::span<const double> x, std::span<const double> y);
double cosine_similarity(const Voiceprint& x, const Voiceprint& y);

// arccos(cosine similarity) / pi, in [0, 1].  A true metric on
// directions; scale-invariant.  Bit-identical operands give exactly 0.
double angular_distance(std::span<const double> x, std::span<const double> y);
double angular_distance(const Voiceprint& x, const Voiceprint& y);

namespace detail {
// angular_distance with the self inner products precomputed by the caller.
// Shares the exact arithmetic of the public function, so bulk paths that
// cache |x|^2 produce bit-identical distances.
double angular_distance_presq(std::span<const double> x, double x_selfdot,
                              std::span<const double> y, double y_selfdot);
double dot(std::span<const double> x, std::span<const double> y);
}  // namespace detail

// Symmetric pairwise angular distances over one database: zero diagonal,
// every entry in [0, 1].
class DistanceMatrix {
 public:
  // threads == 0 uses the machine parallelism; the result is independent
  // of the thread count.
  static DistanceMatrix compute(const VoiceprintDatabase& db,
                                unsigned threads = 0);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  // CSV with row/column headers = record ids, 12 significant digits.
  void write_csv(std::ostream& out) const;

 private:
  DistanceMatrix(std::size_t n, std::vector<std::string> ids,
                 std::vector<double> entries)
      : n_(n), ids_(std::move(ids)), entries_(std::move(entries)) {}

  std::size_t n_;
  std::vector<std::string> ids_;
  std::vector<double> entries_;
};

}  // namespace voiceind

#endif  // VOICEIND_METRIC_HPP_
