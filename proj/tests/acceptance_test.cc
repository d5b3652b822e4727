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

// End-to-end acceptance suite.  Each test prints one
// `[ACCEPTANCE] <criterion>: PASS|FAIL` line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "voiceind/audit.hpp"
#include "voiceind/mechanism.hpp"
#include "voiceind/metric.hpp"
#include "voiceind/release.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/synthetic.hpp"
#include "voiceind/voiceprint.hpp"

namespace voiceind {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Acceptance : public ::testing::Test {
 protected:
  void Label(const std::string& label) { label_ = label; }
  void TearDown() override {
    std::printf("[ACCEPTANCE] %s: %s\n", label_.c_str(),
                HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }
  std::string label_ = "unlabeled";
};

TEST_F(Acceptance, C1_MetricAxioms) {
  Label("C1 metric axioms");
  const auto start = Clock::now();
  for (const std::size_t dim : {std::size_t{2}, std::size_t{8},
                                std::size_t{512}}) {
    SeededRng rng(101 + dim);
    int triangle_failures = 0;
    int range_failures = 0;
    int symmetry_failures = 0;
    int self_failures = 0;
    for (int trial = 0; trial < 100000; ++trial) {
      const std::vector<double> x = testutil::random_coords(rng, dim);
      const std::vector<double> y = testutil::random_coords(rng, dim);
      const std::vector<double> z = testutil::random_coords(rng, dim);
      const std::span<const double> sx(x);
      const std::span<const double> sy(y);
      const std::span<const double> sz(z);
      const double dxy = angular_distance(sx, sy);
      const double dyz = angular_distance(sy, sz);
      const double dxz = angular_distance(sx, sz);
      if (dxy != angular_distance(sy, sx)) ++symmetry_failures;
      if (dxy < 0.0 || dxy > 1.0 || dyz < 0.0 || dyz > 1.0 || dxz < 0.0 ||
          dxz > 1.0) {
        ++range_failures;
      }
      if (angular_distance(sx, sx) != 0.0) ++self_failures;
      if (dxz > dxy + dyz + 1e-9) ++triangle_failures;
    }
    EXPECT_EQ(symmetry_failures, 0) << "dim " << dim;
    EXPECT_EQ(range_failures, 0) << "dim " << dim;
    EXPECT_EQ(self_failures, 0) << "dim " << dim;
    EXPECT_EQ(triangle_failures, 0) << "dim " << dim;
  }
  const double elapsed = seconds_since(start);
  std::printf("[info] C1: 3x100000 triples in %.2f s\n", elapsed);
  EXPECT_LT(elapsed, 30.0);
}

TEST_F(Acceptance, C2_MechanismCorrectness) {
  Label("C2 mechanism correctness");
  const auto start = Clock::now();

  // Analytic distribution vs the independent exponent-then-normalize
  // oracle.
  SeededRng rng(202);
  const double eps_grid[] = {0.0, 0.5, 1.0, 5.0, 20.0};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(30);
    const std::size_t dim = 2 + rng.next_below(14);
    const VoiceprintDatabase db = random_database(n, dim, rng.derive(trial));
    const Voiceprint x0("x0", testutil::random_coords(rng, dim));
    const double epsilon = eps_grid[trial % 5];
    const auto dist = build_distribution(x0, db, PrivacyBudget(epsilon));
    std::vector<double> distances(n);
    for (std::size_t i = 0; i < n; ++i) {
      distances[i] = angular_distance(x0, db.record(i));
    }
    const auto expected =
        testutil::naive_selection_probabilities(epsilon, distances);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_NEAR(dist.probabilities()[i], expected[i], 1e-12)
          << "trial " << trial << " candidate " << i;
    }
  }

  // Sampler total variation against the analytic probabilities.
  const int draws = 400000;
  for (const double epsilon : {0.0, 1.0, 5.0}) {
    for (const std::size_t n : {std::size_t{4}, std::size_t{16}}) {
      const VoiceprintDatabase db =
          random_database(n, 8, SeededRng(300 + n +
                                          static_cast<std::uint64_t>(epsilon)));
      const auto dist =
          build_distribution(db.record(0), db, PrivacyBudget(epsilon));
      const auto cumulative = dist.cumulative();
      SeededRng sampler(400 + n + static_cast<std::uint64_t>(epsilon * 7));
      std::vector<long long> counts(n, 0);
      for (int d = 0; d < draws; ++d) {
        ++counts[sample_index(cumulative, sampler.next_unit())];
      }
      double tv = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        tv += std::abs(static_cast<double>(counts[i]) / draws -
                       dist.probabilities()[i]);
      }
      tv *= 0.5;
      EXPECT_LT(tv, 0.01) << "epsilon=" << epsilon << " n=" << n;
    }
  }

  const double elapsed = seconds_since(start);
  std::printf("[info] C2: oracle + sampler checks in %.2f s\n", elapsed);
  EXPECT_LT(elapsed, 60.0);
}

TEST_F(Acceptance, C3_VoiceIndBound) {
  Label("C3 voice-ind ratio bound");
  const auto start = Clock::now();
  for (const std::size_t n : {std::size_t{5}, std::size_t{20},
                              std::size_t{50}}) {
    const VoiceprintDatabase db = random_database(n, 8, SeededRng(500 + n));
    const DistanceMatrix distances = DistanceMatrix::compute(db);
    for (const double epsilon : {0.5, 1.0, 2.0, 5.0}) {
      const AuditReport report =
          verify_voice_ind(db, PrivacyBudget(epsilon), 1e-9, 50);
      EXPECT_TRUE(report.passes_factor2_bound)
          << "n=" << n << " epsilon=" << epsilon;
      std::printf(
          "[info] C3: n=%zu epsilon=%g effective-epsilon=%.6f factor1=%s\n",
          n, epsilon, report.max_log_ratio_over_distance,
          report.passes_factor1_bound ? "pass" : "fail");

      // Unnormalized weight ratio: the triangle inequality makes
      // eps*(d(x',out) - d(x,out)) <= eps*d(x,x') hold for every triple.
      int violations = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          for (std::size_t k = 0; k < n; ++k) {
            const double lhs =
                epsilon * (distances.at(j, k) - distances.at(i, k));
            if (lhs > epsilon * distances.at(i, j) + 1e-9) ++violations;
          }
        }
      }
      EXPECT_EQ(violations, 0) << "n=" << n << " epsilon=" << epsilon;
    }
  }
  const double elapsed = seconds_since(start);
  std::printf("[info] C3: exhaustive audits in %.2f s\n", elapsed);
  EXPECT_LT(elapsed, 120.0);
}

TEST_F(Acceptance, C4_BayesBound) {
  Label("C4 bayes posterior bound");
  const auto start = Clock::now();
  SeededRng prior_rng(600);
  for (const std::size_t n : {std::size_t{6}, std::size_t{20}}) {
    const VoiceprintDatabase db = random_database(n, 8, SeededRng(700 + n));
    for (const double epsilon : {0.5, 1.0, 2.0, 5.0}) {
      const AuditReport likelihood =
          verify_voice_ind(db, PrivacyBudget(epsilon), 1e-9, 50);
      for (int p = 0; p < 10; ++p) {
        std::vector<double> prior(n);
        double total = 0.0;
        for (double& value : prior) {
          value = 0.05 + prior_rng.next_unit();
          total += value;
        }
        for (double& value : prior) value /= total;
        const BayesBoundReport report =
            bayes_bound_check(prior, db, PrivacyBudget(epsilon), 1e-9, 50);
        EXPECT_TRUE(report.identity_holds)
            << "n=" << n << " epsilon=" << epsilon << " prior " << p
            << " gap=" << report.max_identity_gap;
        EXPECT_EQ(report.passes_factor1_bound,
                  likelihood.passes_factor1_bound);
        EXPECT_EQ(report.passes_factor2_bound,
                  likelihood.passes_factor2_bound);
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::printf("[info] C4: posterior audits in %.2f s\n", elapsed);
  EXPECT_LT(elapsed, 30.0);
}

struct CellStats {
  double mean = 0.0;
  double se = 0.0;
};

// direction +1: non-decreasing; -1: non-increasing.  One adjacent
// inversion is tolerated when its size is within one combined standard
// error.
bool trend_holds(const std::vector<CellStats>& cells, int direction,
                 std::string* detail) {
  int tolerated = 0;
  for (std::size_t k = 1; k < cells.size(); ++k) {
    const double diff = cells[k].mean - cells[k - 1].mean;
    if (direction * diff >= 0.0) continue;
    const double combined_se = std::sqrt(cells[k].se * cells[k].se +
                                         cells[k - 1].se * cells[k - 1].se);
    if (std::abs(diff) <= combined_se && ++tolerated <= 1) continue;
    if (detail != nullptr) {
      *detail = "step " + std::to_string(k) + ": diff=" +
                std::to_string(diff) + " se=" + std::to_string(combined_se);
    }
    return false;
  }
  return true;
}

TEST_F(Acceptance, C5_TrendReproduction) {
  Label("C5 privacy-utility trends");
  const auto start = Clock::now();

  PopulationSpec spec;  // 40 speakers, one record each, dim 512
  const VoiceprintDatabase population =
      generate_population(spec, SeededRng(801));
  const std::vector<std::size_t> n_values{10, 20, 40};
  const std::vector<double> eps_values{1.0, 10.0, 100.0, 1000.0, 10000.0};
  const std::size_t trials = 20;
  ExperimentOptions options;
  options.measure_time = false;
  const auto rows = run_experiment_grid(population, n_values, eps_values,
                                        trials, SeededRng(802), options);

  auto cell = [&](std::size_t n, double epsilon, auto field) {
    std::vector<double> values;
    for (const ExperimentRow& row : rows) {
      if (row.n == n && row.epsilon == epsilon) values.push_back(field(row));
    }
    CellStats stats;
    for (const double v : values) stats.mean += v;
    stats.mean /= values.size();
    double variance = 0.0;
    for (const double v : values) {
      variance += (v - stats.mean) * (v - stats.mean);
    }
    variance /= (values.size() - 1);
    stats.se = std::sqrt(variance / values.size());
    return stats;
  };

  for (const std::size_t n : n_values) {
    std::vector<CellStats> mse_cells;
    std::vector<CellStats> acc_cells;
    for (const double epsilon : eps_values) {
      mse_cells.push_back(
          cell(n, epsilon, [](const ExperimentRow& r) { return r.mse; }));
      acc_cells.push_back(cell(
          n, epsilon, [](const ExperimentRow& r) { return r.attack_accuracy; }));
    }
    std::string detail;
    EXPECT_TRUE(trend_holds(mse_cells, -1, &detail))
        << "mse not non-increasing in epsilon at n=" << n << ": " << detail;
    EXPECT_TRUE(trend_holds(acc_cells, +1, &detail))
        << "accuracy not non-decreasing in epsilon at n=" << n << ": "
        << detail;
    std::printf("[info] C5: n=%zu acc over eps:", n);
    for (const CellStats& s : acc_cells) std::printf(" %.3f", s.mean);
    std::printf("  mse over eps:");
    for (const CellStats& s : mse_cells) std::printf(" %.5f", s.mean);
    std::printf("\n");
  }
  for (const double epsilon : eps_values) {
    std::vector<CellStats> acc_cells;
    for (const std::size_t n : n_values) {
      acc_cells.push_back(cell(
          n, epsilon, [](const ExperimentRow& r) { return r.attack_accuracy; }));
    }
    std::string detail;
    EXPECT_TRUE(trend_holds(acc_cells, -1, &detail))
        << "accuracy not non-increasing in n at epsilon=" << epsilon << ": "
        << detail;
  }

  const double elapsed = seconds_since(start);
  std::printf("[info] C5: 300 grid cells in %.2f s\n", elapsed);
  EXPECT_LT(elapsed, 600.0);
}

TEST_F(Acceptance, C6_EpsilonZeroUniformity) {
  Label("C6 epsilon-zero uniformity");
  std::vector<Voiceprint> basis;
  const char* ids[] = {"a", "b", "c", "d"};
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<double> e(4, 0.0);
    e[i] = 1.0;
    basis.emplace_back(ids[i], std::move(e));
  }
  const VoiceprintDatabase db(std::move(basis));

  std::vector<UtteranceRecord> utterances;
  utterances.reserve(100000);
  for (int rep = 0; rep < 25000; ++rep) {
    for (const Voiceprint& v : db.records()) utterances.emplace_back("", v);
  }
  const PassthroughSynthesizer syn;
  const auto released = release_feature_level(
      utterances, db, PrivacyBudget(0.0), syn, SeededRng(901));

  std::map<std::string, long long> counts;
  for (const auto& u : released) ++counts[u.source_candidate_id];
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [id, count] : counts) {
    const double frequency = static_cast<double>(count) / 100000.0;
    EXPECT_NEAR(frequency, 0.25, 0.005) << id;
    std::printf("[info] C6: candidate %s frequency %.4f\n", id.c_str(),
                frequency);
  }

  const AttackResult attack = reidentification_attack(db, released);
  const double sigma = std::sqrt(0.25 * 0.75 / 100000.0);
  EXPECT_NEAR(attack.accuracy, 0.25, 3.0 * sigma);
  std::printf("[info] C6: attack accuracy %.4f (3 sigma band %.4f)\n",
              attack.accuracy, 3.0 * sigma);
}

TEST_F(Acceptance, C7_FrameworkEquivalenceAndScaling) {
  Label("C7 framework equivalence + scaling");

  // Distributional agreement between the two pipelines, independent
  // randomness on each side.
  {
    const VoiceprintDatabase db = random_database(16, 8, SeededRng(1001));
    const PrivacyBudget eps(1.0);
    const ReleaseModel model = ReleaseModel::build(db, eps);
    const int draws = 100000;
    for (std::size_t record = 0; record < db.size(); ++record) {
      const auto cumulative =
          build_distribution(db.record(record), db, eps).cumulative();
      const auto table = model.table(record);
      SeededRng feature_rng(2000 + record);
      SeededRng model_rng(3000 + record);
      std::vector<long long> feature_counts(db.size(), 0);
      std::vector<long long> model_counts(db.size(), 0);
      for (int d = 0; d < draws; ++d) {
        ++feature_counts[sample_index(cumulative, feature_rng.next_unit())];
        ++model_counts[sample_index(table, model_rng.next_unit())];
      }
      const double p =
          testutil::two_sample_chi2_p(feature_counts, model_counts);
      EXPECT_GT(p, 0.001) << "record " << record;
    }
  }

  // Online-cost shape: quadratic growth for the feature-level pipeline,
  // linear-in-utterances for the model-level pipeline.
  {
    const std::vector<std::size_t> sizes{100, 1000, 10000};
    const BenchTable table =
        bench_perturbation(sizes, PrivacyBudget(1.0), 64, SeededRng(1002));
    print_bench_table(table, std::cout);
    ASSERT_EQ(table.rows.size(), 3u);

    const double feature_ratio =
        table.rows[2].feature_total_s / table.rows[1].feature_total_s;
    std::printf("[info] C7: feature-level time ratio 10000/1000 = %.1f\n",
                feature_ratio);
    EXPECT_GT(feature_ratio, 10.0);

    const double model_ratio_a =
        table.rows[1].model_online_s / table.rows[0].model_online_s;
    const double model_ratio_b =
        table.rows[2].model_online_s / table.rows[1].model_online_s;
    std::printf(
        "[info] C7: model-level time ratios per 10x utterances = %.1f, %.1f\n",
        model_ratio_a, model_ratio_b);
    EXPECT_GE(model_ratio_a, 5.0);
    EXPECT_LE(model_ratio_a, 20.0);
    EXPECT_GE(model_ratio_b, 5.0);
    EXPECT_LE(model_ratio_b, 20.0);
  }
}

#ifdef VOICEIND_CLI_PATH
TEST_F(Acceptance, C8_Reproducibility) {
  Label("C8 byte-identical reproducibility");
  const std::string cli = VOICEIND_CLI_PATH;
  testutil::TempDir dir;
  const std::string capture = dir.file("capture.txt");
  auto run = [&](const std::string& args) {
    const auto result = testutil::run_command(cli + " " + args, capture);
    EXPECT_EQ(result.exit_code, 0) << args << "\n" << result.output;
    return result.output;
  };

  // gen-population
  const std::string pop_a = dir.file("pop_a.emb");
  const std::string pop_b = dir.file("pop_b.emb");
  run("gen-population --speakers 12 --dim 16 --seed 31 --out " + pop_a);
  run("gen-population --speakers 12 --dim 16 --seed 31 --out " + pop_b);
  EXPECT_EQ(testutil::read_file(pop_a), testutil::read_file(pop_b));

  // distance (stdout and matrix file)
  const std::string dist_out =
      run("distance --db " + pop_a + " --a s001 --b s002");
  EXPECT_EQ(dist_out, run("distance --db " + pop_a + " --a s001 --b s002"));
  const std::string matrix_a = dir.file("m_a.csv");
  const std::string matrix_b = dir.file("m_b.csv");
  run("distance --db " + pop_a + " --matrix " + matrix_a);
  run("distance --db " + pop_a + " --matrix " + matrix_b);
  EXPECT_EQ(testutil::read_file(matrix_a), testutil::read_file(matrix_b));

  // perturb
  const std::string perturb_args =
      "perturb --db " + pop_a + " --id s003 --epsilon 2 --seed 47";
  EXPECT_EQ(run(perturb_args), run(perturb_args));

  // release, feature mode, including thread invariance
  const std::string rel_a = dir.file("rel_a.emb");
  const std::string rel_b = dir.file("rel_b.emb");
  const std::string prov_a = dir.file("prov_a.csv");
  const std::string prov_b = dir.file("prov_b.csv");
  run("release --db " + pop_a + " --epsilon 5 --seed 13 --threads 1 --out " +
      rel_a + " --provenance " + prov_a);
  run("release --db " + pop_a + " --epsilon 5 --seed 13 --threads 2 --out " +
      rel_b + " --provenance " + prov_b);
  EXPECT_EQ(testutil::read_file(rel_a), testutil::read_file(rel_b));
  EXPECT_EQ(testutil::read_file(prov_a), testutil::read_file(prov_b));

  // release build-model: byte-identical model files
  const std::string model_a = dir.file("model_a.vim");
  const std::string model_b = dir.file("model_b.vim");
  run("release build-model --db " + pop_a + " --epsilon 5 --out " + model_a);
  run("release build-model --db " + pop_a + " --epsilon 5 --out " + model_b);
  EXPECT_EQ(testutil::read_file(model_a), testutil::read_file(model_b));

  // release, model mode
  const std::string served_a = dir.file("served_a.emb");
  const std::string served_b = dir.file("served_b.emb");
  run("release --mode model --model " + model_a + " --seed 13 --out " +
      served_a);
  run("release --mode model --model " + model_a + " --seed 13 --out " +
      served_b);
  EXPECT_EQ(testutil::read_file(served_a), testutil::read_file(served_b));

  // audit text + json
  const std::string json_a = dir.file("audit_a.json");
  const std::string json_b = dir.file("audit_b.json");
  const std::string audit_out = run("audit --db " + pop_a +
                                    " --epsilon 1 --prior uniform --json " +
                                    json_a);
  EXPECT_EQ(audit_out, run("audit --db " + pop_a +
                           " --epsilon 1 --prior uniform --json " + json_b));
  EXPECT_EQ(testutil::read_file(json_a), testutil::read_file(json_b));

  // attack
  const std::string attack_args =
      "attack --db " + pop_a + " --released " + rel_a;
  EXPECT_EQ(run(attack_args), run(attack_args));

  // experiment without timings, including thread invariance
  const std::string grid_a = dir.file("grid_a.csv");
  const std::string grid_b = dir.file("grid_b.csv");
  const std::string grid_args = "experiment --population " + pop_a +
                                " --n-values 4,8 --eps-values 1,100 "
                                "--trials 4 --seed 3 --no-timing --out ";
  run(grid_args + grid_a + " --threads 1");
  run(grid_args + grid_b + " --threads 2");
  EXPECT_EQ(testutil::read_file(grid_a), testutil::read_file(grid_b));
}
#endif  // VOICEIND_CLI_PATH

}  // namespace
}  // namespace voiceind
