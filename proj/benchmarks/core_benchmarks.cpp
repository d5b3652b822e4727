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

#include <benchmark/benchmark.h>

#include "voiceind/mechanism.hpp"
#include "voiceind/metric.hpp"
#include "voiceind/release.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/synthetic.hpp"

namespace {

using namespace voiceind;

void BM_AngularDistance(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  SeededRng rng(1);
  const std::vector<double> x = random_direction(dim, rng);
  const std::vector<double> y = random_direction(dim, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(angular_distance(std::span<const double>(x),
                                              std::span<const double>(y)));
  }
}
BENCHMARK(BM_AngularDistance)->Arg(8)->Arg(64)->Arg(512);

void BM_BuildDistribution(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VoiceprintDatabase db = random_database(n, 64, SeededRng(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_distribution(db.record(0), db, PrivacyBudget(1.0)));
  }
}
BENCHMARK(BM_BuildDistribution)->Arg(16)->Arg(256)->Arg(4096);

void BM_SampleFromCumulative(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VoiceprintDatabase db = random_database(n, 16, SeededRng(3));
  const auto cumulative =
      build_distribution(db.record(0), db, PrivacyBudget(1.0)).cumulative();
  SeededRng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_index(cumulative, rng.next_unit()));
  }
}
BENCHMARK(BM_SampleFromCumulative)->Arg(16)->Arg(256)->Arg(4096);

// Single-utterance online cost of the two pipelines: the feature-level
// path scales with the candidate count, the model-level path does not.
void BM_FeatureOnlinePerUtterance(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VoiceprintDatabase db = random_database(n, 64, SeededRng(5));
  const std::vector<UtteranceRecord> one{UtteranceRecord("", db.record(0))};
  const PassthroughSynthesizer syn;
  ReleaseOptions options;
  options.threads = 1;
  std::uint64_t draw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(release_feature_level(
        one, db, PrivacyBudget(1.0), syn, SeededRng(draw++), options));
  }
}
BENCHMARK(BM_FeatureOnlinePerUtterance)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ModelOnlinePerUtterance(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VoiceprintDatabase db = random_database(n, 64, SeededRng(6));
  const ReleaseModel model = ReleaseModel::build(db, PrivacyBudget(1.0), 1);
  const std::vector<UtteranceRecord> one{UtteranceRecord("", db.record(0))};
  const PassthroughSynthesizer syn;
  ReleaseOptions options;
  options.threads = 1;
  std::uint64_t draw = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(release_model_level(one, model, syn,
                                                 SeededRng(draw++), options));
  }
}
BENCHMARK(BM_ModelOnlinePerUtterance)->Arg(100)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
