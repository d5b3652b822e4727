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

#ifndef VOICEIND_AUDIT_HPP_
#define VOICEIND_AUDIT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "voiceind/mechanism.hpp"
#include "voiceind/release.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/voiceprint.hpp"

namespace voiceind {

inline constexpr std::size_t kDefaultAuditCap = 200;
inline constexpr double kDefaultAuditTolerance = 1e-9;

struct WorstTriple {
  std::string x_id;        // input voiceprint
  std::string x_prime_id;  // alternative input
  std::string output_id;   // released candidate
};

// Result of the exhaustive likelihood-ratio audit.  The factor-1 bound is
// log ratio <= eps * d; the factor-2 bound (what the normalized mechanism
// provably guarantees) is log ratio <= 2 * eps * d.  Pairs at distance
// zero are instead required to have equal probabilities within tolerance.
struct AuditReport {
  std::size_t n = 0;
  double epsilon = 0.0;
  // Empirical effective epsilon: max over triples of log(ratio) / d.
  double max_log_ratio_over_distance = 0.0;
  WorstTriple worst_triple;
  bool passes_factor1_bound = true;
  bool passes_factor2_bound = true;
  double tolerance = kDefaultAuditTolerance;
  // Max |Pr difference| over input pairs at distance zero.
  double max_equal_distance_gap = 0.0;
};

// Checks the indistinguishability ratio over every (x, x', output) triple
// with x != x', using analytic probabilities.  Cost is Theta(n^3); n above
// cap is an error.
AuditReport verify_voice_ind(const VoiceprintDatabase& db, PrivacyBudget eps,
                             double tolerance = kDefaultAuditTolerance,
                             std::size_t cap = kDefaultAuditCap,
                             unsigned threads = 0);

// Result of the prior/posterior audit: posteriors are computed from the
// mechanism likelihoods by Bayes' rule, and the check confirms both the
// identity  log(posterior ratio) - log(prior ratio) = log(likelihood
// ratio)  and the distance-scaled bounds on the information gain.
struct BayesBoundReport {
  std::size_t n = 0;
  double epsilon = 0.0;
  double max_identity_gap = 0.0;
  bool identity_holds = true;
  double max_log_gain_over_distance = 0.0;
  bool passes_factor1_bound = true;
  bool passes_factor2_bound = true;
  double tolerance = kDefaultAuditTolerance;
};

// prior must be strictly positive over all records and sum to 1 within
// 1e-12.
BayesBoundReport bayes_bound_check(std::span<const double> prior,
                                   const VoiceprintDatabase& db,
                                   PrivacyBudget eps,
                                   double tolerance = kDefaultAuditTolerance,
                                   std::size_t cap = kDefaultAuditCap,
                                   unsigned threads = 0);

struct AttackResult {
  std::size_t trials = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::string attack_type = "cosine-nn";
};

// Closed-set re-identification: for each released utterance the attacker
// outputs the original record with the highest cosine similarity (ties to
// the lowest index); a hit is an exact id match with the true source.
AttackResult reidentification_attack(
    const VoiceprintDatabase& original,
    std::span<const ProtectedUtterance> released);
AttackResult reidentification_attack(const VoiceprintDatabase& original,
                                     const VoiceprintDatabase& released);

// Mean over records of |x_hat - y_hat|^2 / dim, where x_hat, y_hat are the
// unit-normalized original and released vectors matched by id.
double mse(const VoiceprintDatabase& original,
           const VoiceprintDatabase& released);

struct ExperimentRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t trial = 0;
  std::uint64_t cell_seed = 0;
  double mse = 0.0;
  double attack_accuracy = 0.0;
  double feature_online_s = 0.0;
  double model_online_s = 0.0;
};

struct ExperimentOptions {
  // When false, wall times are reported as 0 and the model-level pipeline
  // is skipped; output then depends only on (inputs, seed).
  bool measure_time = true;
  unsigned threads = 0;
};

// For each (n, eps, trial): subsamples n records from the population,
// releases them, and records utility (mse), attack accuracy and online
// wall time for both pipelines.  Cell randomness derives from
// (seed, n index, eps index, trial), so rows are reproducible cell by
// cell.
std::vector<ExperimentRow> run_experiment_grid(
    const VoiceprintDatabase& population, std::span<const std::size_t> n_values,
    std::span<const double> eps_values, std::size_t trials,
    const SeededRng& rng, const ExperimentOptions& options = {});

// Columns: n, epsilon, trial, mse, attack_acc, feature_online_s,
// model_online_s.
void write_experiment_csv(std::span<const ExperimentRow> rows,
                          std::ostream& out);

struct BenchRow {
  std::size_t n = 0;
  double feature_total_s = 0.0;  // online time, n utterances vs size-n db
  double model_build_s = 0.0;    // offline table build
  double model_online_s = 0.0;   // online time, n utterances, prebuilt model
};

struct BenchTable {
  std::size_t dim = 0;
  double epsilon = 0.0;
  std::vector<BenchRow> rows;
};

// Measures the online perturbation cost of both pipelines on synthetic
// databases of the given (ascending) sizes.  Short measurements are
// repeated until the total exceeds ~0.2 s and averaged.
BenchTable bench_perturbation(std::span<const std::size_t> db_sizes,
                              PrivacyBudget eps, std::size_t dim,
                              const SeededRng& rng);

// Text table: one column per database size, one row per pipeline, plus
// the published reference timings for scale comparison.
void print_bench_table(const BenchTable& table, std::ostream& out);

}  // namespace voiceind

#endif  // VOICEIND_AUDIT_HPP_
