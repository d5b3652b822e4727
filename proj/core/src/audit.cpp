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

#include "voiceind/audit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "voiceind/error.hpp"
#include "voiceind/metric.hpp"
#include "voiceind/parallel.hpp"
#include "voiceind/synthetic.hpp"
#include "voiceind/textio.hpp"

namespace voiceind {

namespace {

// Analytic per-input probabilities: row i is the distribution of outputs
// given input record i.
struct MechanismSurface {
  std::size_t n = 0;
  std::vector<double> prob;      // row-major n x n
  std::vector<double> log_prob;  // row-major n x n
  DistanceMatrix distances;
};

MechanismSurface compute_surface(const VoiceprintDatabase& db,
                                 PrivacyBudget eps, unsigned threads) {
  const std::size_t n = db.size();
  MechanismSurface surface{n, std::vector<double>(n * n),
                           std::vector<double>(n * n),
                           DistanceMatrix::compute(db, threads)};
  parallel_for(n, threads, [&](std::size_t i) {
    const PerturbationDistribution dist =
        build_distribution(db.record(i), db, eps);
    for (std::size_t k = 0; k < n; ++k) {
      surface.prob[i * n + k] = dist.probabilities()[k];
      surface.log_prob[i * n + k] = std::log(dist.probabilities()[k]);
    }
  });
  return surface;
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw ValidationError("audit cap exceeded: n=" + std::to_string(n) +
                          ", cap=" + std::to_string(cap) +
                          " (the triple scan is cubic in n)");
  }
}

struct TripleScan {
  double max_ratio = 0.0;   // max log(ratio)/d over pairs with d > 0
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  std::size_t worst_k = 0;
  bool has_worst = false;
  bool factor1 = true;
  bool factor2 = true;
  double max_zero_gap = 0.0;
};

// Scans all (i, j, k) with j != i for one fixed i.
TripleScan scan_input_pair_rows(const MechanismSurface& s, std::size_t i,
                                double epsilon, double tolerance) {
  TripleScan out;
  const std::size_t n = s.n;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double d = s.distances.at(i, j);
    if (d > 0.0) {
      for (std::size_t k = 0; k < n; ++k) {
        const double log_ratio = s.log_prob[i * n + k] - s.log_prob[j * n + k];
        if (log_ratio > epsilon * d + tolerance) out.factor1 = false;
        if (log_ratio > 2.0 * epsilon * d + tolerance) out.factor2 = false;
        const double ratio = log_ratio / d;
        if (!out.has_worst || ratio > out.max_ratio) {
          out.max_ratio = ratio;
          out.worst_i = i;
          out.worst_j = j;
          out.worst_k = k;
          out.has_worst = true;
        }
      }
    } else {
      // Indistinguishable inputs: probabilities must agree outright.
      for (std::size_t k = 0; k < n; ++k) {
        const double gap =
            std::abs(s.prob[i * n + k] - s.prob[j * n + k]);
        out.max_zero_gap = std::max(out.max_zero_gap, gap);
        if (gap > tolerance) {
          out.factor1 = false;
          out.factor2 = false;
        }
      }
    }
  }
  return out;
}

}  // namespace

AuditReport verify_voice_ind(const VoiceprintDatabase& db, PrivacyBudget eps,
                             double tolerance, std::size_t cap,
                             unsigned threads) {
  check_cap(db.size(), cap);
  const MechanismSurface surface = compute_surface(db, eps, threads);
  const std::size_t n = db.size();

  std::vector<TripleScan> partial(n);
  parallel_for(n, threads, [&](std::size_t i) {
    partial[i] = scan_input_pair_rows(surface, i, eps.epsilon(), tolerance);
  });

  AuditReport report;
  report.n = n;
  report.epsilon = eps.epsilon();
  report.tolerance = tolerance;
  TripleScan merged;
  for (const TripleScan& p : partial) {
    merged.factor1 = merged.factor1 && p.factor1;
    merged.factor2 = merged.factor2 && p.factor2;
    merged.max_zero_gap = std::max(merged.max_zero_gap, p.max_zero_gap);
    if (p.has_worst && (!merged.has_worst || p.max_ratio > merged.max_ratio)) {
      merged.max_ratio = p.max_ratio;
      merged.worst_i = p.worst_i;
      merged.worst_j = p.worst_j;
      merged.worst_k = p.worst_k;
      merged.has_worst = true;
    }
  }
  report.passes_factor1_bound = merged.factor1;
  report.passes_factor2_bound = merged.factor2;
  report.max_equal_distance_gap = merged.max_zero_gap;
  if (merged.has_worst) {
    report.max_log_ratio_over_distance = std::max(0.0, merged.max_ratio);
    report.worst_triple = {db.record(merged.worst_i).id(),
                           db.record(merged.worst_j).id(),
                           db.record(merged.worst_k).id()};
  }
  return report;
}

BayesBoundReport bayes_bound_check(std::span<const double> prior,
                                   const VoiceprintDatabase& db,
                                   PrivacyBudget eps, double tolerance,
                                   std::size_t cap, unsigned threads) {
  const std::size_t n = db.size();
  check_cap(n, cap);
  if (prior.size() != n) {
    throw ValidationError("invalid prior: has " +
                          std::to_string(prior.size()) + " entries, expected " +
                          std::to_string(n));
  }
  double prior_sum = 0.0;
  for (const double p : prior) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ValidationError("invalid prior: entries must be strictly positive");
    }
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-12) {
    throw ValidationError("invalid prior: sums to " +
                          std::to_string(prior_sum) + ", expected 1");
  }

  const MechanismSurface surface = compute_surface(db, eps, threads);

  // log posterior(x_i | output k) by Bayes' rule from the likelihoods.
  std::vector<double> log_posterior(n * n);
  parallel_for(n, threads, [&](std::size_t k) {
    double normalizer = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      normalizer += surface.prob[i * n + k] * prior[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      log_posterior[k * n + i] =
          std::log(surface.prob[i * n + k] * prior[i] / normalizer);
    }
  });

  std::vector<double> log_prior(n);
  for (std::size_t i = 0; i < n; ++i) log_prior[i] = std::log(prior[i]);

  BayesBoundReport report;
  report.n = n;
  report.epsilon = eps.epsilon();
  report.tolerance = tolerance;

  struct Partial {
    double max_gap = 0.0;
    double max_gain_ratio = 0.0;
    bool has_ratio = false;
    bool factor1 = true;
    bool factor2 = true;
  };
  std::vector<Partial> partial(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Partial& out = partial[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = surface.distances.at(i, j);
      const double prior_term = log_prior[i] - log_prior[j];
      for (std::size_t k = 0; k < n; ++k) {
        const double posterior_term =
            log_posterior[k * n + i] - log_posterior[k * n + j];
        const double gain = posterior_term - prior_term;
        const double likelihood_term =
            surface.log_prob[i * n + k] - surface.log_prob[j * n + k];
        out.max_gap = std::max(out.max_gap, std::abs(gain - likelihood_term));
        if (d > 0.0) {
          if (gain > eps.epsilon() * d + tolerance) out.factor1 = false;
          if (gain > 2.0 * eps.epsilon() * d + tolerance) out.factor2 = false;
          const double ratio = gain / d;
          if (!out.has_ratio || ratio > out.max_gain_ratio) {
            out.max_gain_ratio = ratio;
            out.has_ratio = true;
          }
        } else if (std::abs(gain) > tolerance) {
          out.factor1 = false;
          out.factor2 = false;
        }
      }
    }
  });

  for (const Partial& p : partial) {
    report.max_identity_gap = std::max(report.max_identity_gap, p.max_gap);
    report.passes_factor1_bound = report.passes_factor1_bound && p.factor1;
    report.passes_factor2_bound = report.passes_factor2_bound && p.factor2;
    if (p.has_ratio) {
      report.max_log_gain_over_distance =
          std::max(report.max_log_gain_over_distance, p.max_gain_ratio);
    }
  }
  report.identity_holds = report.max_identity_gap <= tolerance;
  return report;
}

namespace {

std::size_t nearest_record(const VoiceprintDatabase& original,
                           std::span<const double> probe,
                           std::span<const double> selfdots) {
  const double probe_selfdot = detail::dot(probe, probe);
  std::size_t best = 0;
  double best_cos = -2.0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double c = detail::dot(probe, original.record(i).coords()) /
                     (std::sqrt(probe_selfdot) * std::sqrt(selfdots[i]));
    if (c > best_cos) {  // strict: ties stay at the lowest index
      best_cos = c;
      best = i;
    }
  }
  return best;
}

std::vector<double> record_selfdots(const VoiceprintDatabase& db) {
  std::vector<double> selfdots(db.size());
  for (std::size_t i = 0; i < db.size(); ++i) {
    selfdots[i] = detail::dot(db.record(i).coords(), db.record(i).coords());
  }
  return selfdots;
}

}  // namespace

AttackResult reidentification_attack(
    const VoiceprintDatabase& original,
    std::span<const ProtectedUtterance> released) {
  const std::vector<double> selfdots = record_selfdots(original);
  AttackResult result;
  result.trials = released.size();
  for (const ProtectedUtterance& u : released) {
    if (u.released_voiceprint.dim() != original.dim()) {
      throw ValidationError("released utterance '" + u.id +
                            "' has dimension " +
                            std::to_string(u.released_voiceprint.dim()) +
                            ", database has " +
                            std::to_string(original.dim()));
    }
    const std::size_t guess =
        nearest_record(original, u.released_voiceprint.coords(), selfdots);
    if (original.record(guess).id() == u.id) ++result.correct;
  }
  result.accuracy =
      result.trials == 0
          ? 0.0
          : static_cast<double>(result.correct) / static_cast<double>(result.trials);
  return result;
}

AttackResult reidentification_attack(const VoiceprintDatabase& original,
                                     const VoiceprintDatabase& released) {
  if (released.dim() != original.dim()) {
    throw ValidationError("dimension mismatch between original and released");
  }
  const std::vector<double> selfdots = record_selfdots(original);
  AttackResult result;
  result.trials = released.size();
  for (const Voiceprint& v : released.records()) {
    const std::size_t guess = nearest_record(original, v.coords(), selfdots);
    if (original.record(guess).id() == v.id()) ++result.correct;
  }
  result.accuracy =
      result.trials == 0
          ? 0.0
          : static_cast<double>(result.correct) / static_cast<double>(result.trials);
  return result;
}

double mse(const VoiceprintDatabase& original,
           const VoiceprintDatabase& released) {
  if (original.size() != released.size()) {
    throw ValidationError("id set mismatch: " +
                          std::to_string(original.size()) + " vs " +
                          std::to_string(released.size()) + " records");
  }
  if (original.dim() != released.dim()) {
    throw ValidationError("dimension mismatch between original and released");
  }
  const std::size_t dim = original.dim();
  double total = 0.0;
  for (const Voiceprint& o : original.records()) {
    const auto index = released.index_of(o.id());
    if (!index) {
      throw ValidationError("id set mismatch: record '" + o.id() +
                            "' is missing from the released database");
    }
    const Voiceprint on = normalize(o);
    const Voiceprint rn = normalize(released.record(*index));
    double sq = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double diff = on.coords()[c] - rn.coords()[c];
      sq += diff * diff;
    }
    total += sq / static_cast<double>(dim);
  }
  return total / static_cast<double>(original.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

VoiceprintDatabase subsample(const VoiceprintDatabase& population,
                             std::size_t n, SeededRng& rng) {
  std::vector<std::size_t> indices(population.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  // Partial Fisher-Yates: the first n slots end up with the sample.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(rng.next_below(indices.size() - i));
    std::swap(indices[i], indices[j]);
  }
  std::vector<Voiceprint> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    records.push_back(population.record(indices[i]));
  }
  return VoiceprintDatabase(std::move(records));
}

}  // namespace

std::vector<ExperimentRow> run_experiment_grid(
    const VoiceprintDatabase& population,
    std::span<const std::size_t> n_values, std::span<const double> eps_values,
    std::size_t trials, const SeededRng& rng,
    const ExperimentOptions& options) {
  for (const std::size_t n : n_values) {
    if (n == 0 || n > population.size()) {
      throw ValidationError("n=" + std::to_string(n) +
                            " is invalid for a population of " +
                            std::to_string(population.size()));
    }
  }

  std::vector<ExperimentRow> rows;
  rows.reserve(n_values.size() * eps_values.size() * trials);
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    for (std::size_t ei = 0; ei < eps_values.size(); ++ei) {
      const PrivacyBudget eps(eps_values[ei]);
      for (std::size_t trial = 0; trial < trials; ++trial) {
        const SeededRng cell = rng.derive(ni).derive(ei).derive(trial);
        SeededRng sampler = cell.derive(0);
        const VoiceprintDatabase sub =
            subsample(population, n_values[ni], sampler);

        ExperimentRow row;
        row.n = n_values[ni];
        row.epsilon = eps_values[ei];
        row.trial = trial;
        row.cell_seed = cell.seed();

        const auto feature_start = Clock::now();
        const VoiceprintDatabase released =
            release_database(sub, eps, cell.derive(1), options.threads);
        if (options.measure_time) {
          row.feature_online_s = seconds_since(feature_start);
        }

        row.mse = mse(sub, released);
        row.attack_accuracy = reidentification_attack(sub, released).accuracy;

        if (options.measure_time) {
          const ReleaseModel model =
              ReleaseModel::build(sub, eps, options.threads);
          const std::vector<UtteranceRecord> utterances =
              utterances_from_database(sub);
          const PassthroughSynthesizer syn;
          ReleaseOptions release_options;
          release_options.threads = options.threads;
          const auto model_start = Clock::now();
          const auto served = release_model_level(utterances, model, syn,
                                                  cell.derive(2),
                                                  release_options);
          row.model_online_s = seconds_since(model_start);
          (void)served;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

void write_experiment_csv(std::span<const ExperimentRow> rows,
                          std::ostream& out) {
  out << "n,epsilon,trial,mse,attack_acc,feature_online_s,model_online_s\n";
  for (const ExperimentRow& row : rows) {
    out << row.n << ',' << format_sig12(row.epsilon) << ',' << row.trial << ','
        << format_sig12(row.mse) << ',' << format_sig12(row.attack_accuracy)
        << ',' << format_sig12(row.feature_online_s) << ','
        << format_sig12(row.model_online_s) << '\n';
  }
}

namespace {

// Repeats short workloads until ~0.2 s of total run time and returns the
// mean seconds per run, so ratios between sizes are not timer noise.
double measure_seconds(const std::function<void()>& work) {
  const auto first_start = Clock::now();
  work();
  const double first = seconds_since(first_start);
  if (first >= 0.2) return first;
  const std::size_t reps = std::min<std::size_t>(
      10000, static_cast<std::size_t>(0.2 / std::max(first, 1e-9)) + 1);
  const auto start = Clock::now();
  for (std::size_t r = 0; r < reps; ++r) work();
  return seconds_since(start) / static_cast<double>(reps);
}

}  // namespace

BenchTable bench_perturbation(std::span<const std::size_t> db_sizes,
                              PrivacyBudget eps, std::size_t dim,
                              const SeededRng& rng) {
  if (db_sizes.empty()) throw ValidationError("no database sizes given");
  for (std::size_t i = 1; i < db_sizes.size(); ++i) {
    if (db_sizes[i] <= db_sizes[i - 1]) {
      throw ValidationError("database sizes must be strictly ascending");
    }
  }

  BenchTable table;
  table.dim = dim;
  table.epsilon = eps.epsilon();
  const PassthroughSynthesizer syn;
  ReleaseOptions single_thread;
  single_thread.threads = 1;

  for (std::size_t si = 0; si < db_sizes.size(); ++si) {
    const std::size_t n = db_sizes[si];
    const VoiceprintDatabase db =
        random_database(n, dim, rng.derive(si).derive(0));
    const std::vector<UtteranceRecord> utterances =
        utterances_from_database(db);

    BenchRow row;
    row.n = n;
    row.feature_total_s = measure_seconds([&] {
      release_feature_level(utterances, db, eps, syn, rng.derive(si).derive(1),
                            single_thread);
    });

    const auto build_start = Clock::now();
    const ReleaseModel model = ReleaseModel::build(db, eps, 1);
    row.model_build_s = seconds_since(build_start);

    row.model_online_s = measure_seconds([&] {
      release_model_level(utterances, model, syn, rng.derive(si).derive(2),
                          single_thread);
    });
    table.rows.push_back(row);
  }
  return table;
}

void print_bench_table(const BenchTable& table, std::ostream& out) {
  auto print_row = [&](const char* label,
                       const std::function<std::string(const BenchRow&)>& cell) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "  %-28s", label);
    out << buf;
    for (const BenchRow& row : table.rows) {
      std::snprintf(buf, sizeof(buf), " %14s", cell(row).c_str());
      out << buf;
    }
    out << '\n';
  };
  auto fixed = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };

  out << "online perturbation time (dim=" << table.dim
      << ", epsilon=" << format_sig12(table.epsilon) << ")\n";
  print_row("database size n", [](const BenchRow& row) {
    return std::to_string(row.n);
  });
  print_row("feature-level online (s)",
            [&](const BenchRow& row) { return fixed(row.feature_total_s); });
  print_row("model-level online (s)",
            [&](const BenchRow& row) { return fixed(row.model_online_s); });
  print_row("model build, offline (s)",
            [&](const BenchRow& row) { return fixed(row.model_build_s); });
  // Published timings for the same database sizes, measured for the
  // feature-level pipeline on different hardware; for scale only.
  static const std::unordered_map<std::size_t, const char*> kReference = {
      {100, "0.4802"}, {1000, "29.0959"}, {10000, "2710.9289"}};
  print_row("published reference (s)", [](const BenchRow& row) {
    const auto it = kReference.find(row.n);
    return std::string(it == kReference.end() ? "-" : it->second);
  });
  out << "  feature-level online cost grows quadratically in n; the\n"
         "  model-level online cost is linear in the utterance count.\n";
}

}  // namespace voiceind
