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

#include <string>

#include "gtest/gtest.h"
#include "test_util.hpp"

namespace {

using testutil::CommandResult;
using testutil::read_file;
using testutil::run_command;
using testutil::TempDir;
using testutil::write_file;

const std::string kCli = VOICEIND_CLI_PATH;

class CliTest : public ::testing::Test {
 protected:
  CommandResult run(const std::string& args) {
    return run_command(kCli + " " + args, dir_.file("capture.txt"));
  }

  std::string make_db() {
    const std::string path = dir_.file("db.emb");
    write_file(path,
               "# records=4 dim=3\n"
               "a 1 0 0\n"
               "b 0 1 0\n"
               "c 0 0 1\n"
               "d 1 1 0\n");
    return path;
  }

  TempDir dir_;
};

TEST_F(CliTest, DistancePair) {
  const std::string db = make_db();
  const CommandResult result = run("distance --db " + db + " --a a --b b");
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(result.output, "0.5\n");
}

TEST_F(CliTest, DistanceMatrixCsv) {
  const std::string db = make_db();
  const std::string csv = dir_.file("matrix.csv");
  const CommandResult result = run("distance --db " + db + " --matrix " + csv);
  EXPECT_EQ(result.exit_code, 0);
  const std::string content = read_file(csv);
  EXPECT_EQ(content.rfind("id,a,b,c,d\n", 0), 0u);
  EXPECT_NE(content.find("a,0,0.5,0.5,0.25\n"), std::string::npos);
}

TEST_F(CliTest, DistanceUnknownIdFails) {
  const std::string db = make_db();
  const CommandResult result = run("distance --db " + db + " --a a --b nope");
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.output.find("nope"), std::string::npos);
}

TEST_F(CliTest, PerturbIsDeterministic) {
  const std::string db = make_db();
  const std::string args =
      "perturb --db " + db + " --id a --epsilon 1 --seed 7";
  const CommandResult first = run(args);
  const CommandResult second = run(args);
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
  EXPECT_FALSE(first.output.empty());
}

TEST_F(CliTest, PerturbDistributionDump) {
  const std::string db = make_db();
  const std::string csv = dir_.file("dist.csv");
  const CommandResult result = run("perturb --db " + db +
                                   " --id a --epsilon 0 --seed 1 "
                                   "--dump-distribution " +
                                   csv);
  EXPECT_EQ(result.exit_code, 0);
  const std::string content = read_file(csv);
  EXPECT_EQ(content.rfind("candidate_id,distance,probability\n", 0), 0u);
  EXPECT_NE(content.find("a,0,0.25\n"), std::string::npos);
}

TEST_F(CliTest, ReleaseFeatureAndProvenance) {
  const std::string db = make_db();
  const std::string out = dir_.file("released.emb");
  const std::string prov = dir_.file("prov.csv");
  const CommandResult result =
      run("release --db " + db + " --epsilon 2 --seed 9 --out " + out +
          " --provenance " + prov);
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_EQ(read_file(out).rfind("# records=4 dim=3\n", 0), 0u);
  EXPECT_EQ(read_file(prov).rfind("utterance_id,candidate_id,probability\n", 0),
            0u);

  // --strip-provenance suppresses the provenance output.
  const std::string prov2 = dir_.file("prov2.csv");
  const CommandResult stripped =
      run("release --db " + db + " --epsilon 2 --seed 9 --out " + out +
          " --provenance " + prov2 + " --strip-provenance");
  EXPECT_EQ(stripped.exit_code, 0);
  EXPECT_EQ(read_file(prov2), "");
}

TEST_F(CliTest, ReleaseModelModeRequiresModel) {
  const std::string db = make_db();
  const CommandResult result = run("release --mode model --db " + db +
                                   " --out " + dir_.file("x.emb"));
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.output.find("--model"), std::string::npos);
}

TEST_F(CliTest, BuildModelThenServe) {
  const std::string db = make_db();
  const std::string model = dir_.file("model.vim");
  const CommandResult build =
      run("release build-model --db " + db + " --epsilon 1.5 --out " + model);
  EXPECT_EQ(build.exit_code, 0);

  const std::string out = dir_.file("served.emb");
  const CommandResult serve = run("release --mode model --model " + model +
                                  " --seed 4 --out " + out);
  EXPECT_EQ(serve.exit_code, 0);
  EXPECT_EQ(read_file(out).rfind("# records=4 dim=3\n", 0), 0u);

  // Model mode refuses a fresh epsilon.
  const CommandResult conflict =
      run("release --mode model --model " + model +
          " --epsilon 3 --seed 4 --out " + out);
  EXPECT_NE(conflict.exit_code, 0);
}

TEST_F(CliTest, AuditEpsilonZero) {
  const std::string db = make_db();
  const std::string json = dir_.file("report.json");
  const CommandResult result =
      run("audit --db " + db + " --epsilon 0 --prior uniform --json " + json);
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.output.find("effective epsilon       0\n"),
            std::string::npos);
  EXPECT_NE(result.output.find("factor-2 bound (e^{2*eps*d})  PASS"),
            std::string::npos);
  EXPECT_NE(result.output.find("identity within tol     PASS"),
            std::string::npos);
  EXPECT_NE(read_file(json).find("\"passes_factor2_bound\": true"),
            std::string::npos);
}

TEST_F(CliTest, AuditCapExceeded) {
  const std::string db = make_db();
  const CommandResult result =
      run("audit --db " + db + " --epsilon 1 --cap 2");
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.output.find("cap"), std::string::npos);
}

TEST_F(CliTest, AttackOnUnperturbedRelease) {
  const std::string db = make_db();
  const CommandResult result =
      run("attack --db " + db + " --released " + db);
  EXPECT_EQ(result.exit_code, 0);
  EXPECT_NE(result.output.find("accuracy  1\n"), std::string::npos);
}

TEST_F(CliTest, GenPopulationDeterministic) {
  const std::string a = dir_.file("pop_a.emb");
  const std::string b = dir_.file("pop_b.emb");
  EXPECT_EQ(run("gen-population --speakers 6 --dim 8 --seed 5 --out " + a)
                .exit_code,
            0);
  EXPECT_EQ(run("gen-population --speakers 6 --dim 8 --seed 5 --out " + b)
                .exit_code,
            0);
  EXPECT_EQ(read_file(a), read_file(b));
  EXPECT_NE(read_file(a), "");
}

TEST_F(CliTest, ExperimentNoTimingIsDeterministic) {
  const std::string pop = dir_.file("pop.emb");
  ASSERT_EQ(run("gen-population --speakers 8 --dim 8 --seed 2 --out " + pop)
                .exit_code,
            0);
  const std::string csv_a = dir_.file("grid_a.csv");
  const std::string csv_b = dir_.file("grid_b.csv");
  const std::string args = "experiment --population " + pop +
                           " --n-values 3,6 --eps-values 0.5,5 --trials 3 "
                           "--seed 11 --no-timing --out ";
  ASSERT_EQ(run(args + csv_a).exit_code, 0);
  ASSERT_EQ(run(args + csv_b).exit_code, 0);
  EXPECT_EQ(read_file(csv_a), read_file(csv_b));
  EXPECT_EQ(read_file(csv_a).rfind(
                "n,epsilon,trial,mse,attack_acc,feature_online_s,"
                "model_online_s\n",
                0),
            0u);
}

TEST_F(CliTest, MissingFileFailsWithPath) {
  const CommandResult result =
      run("distance --db /nonexistent/db.emb --a a --b b");
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.output.find("/nonexistent/db.emb"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagIsHardError) {
  const std::string db = make_db();
  const CommandResult result =
      run("distance --db " + db + " --a a --b b --frobnicate");
  EXPECT_NE(result.exit_code, 0);
}

TEST_F(CliTest, ParseErrorCarriesLine) {
  const std::string bad = dir_.file("bad.emb");
  write_file(bad, "a 1 0\nb 0 x\n");
  const CommandResult result = run("distance --db " + bad + " --a a --b b");
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.output.find("line 2"), std::string::npos);
}

TEST_F(CliTest, SeedEnvOverrideMatchesFlag) {
  const std::string db = make_db();
  const CommandResult via_env = run_command(
      "VOICEIND_SEED=99 " + kCli + " perturb --db " + db +
          " --id a --epsilon 1",
      dir_.file("env.txt"));
  const CommandResult via_flag =
      run("perturb --db " + db + " --id a --epsilon 1 --seed 99");
  EXPECT_EQ(via_env.exit_code, 0);
  EXPECT_EQ(via_env.output, via_flag.output);
}

TEST_F(CliTest, AuditCapEnvOverride) {
  const std::string db = make_db();
  const CommandResult result = run_command(
      "VOICEIND_AUDIT_CAP=2 " + kCli + " audit --db " + db + " --epsilon 1",
      dir_.file("cap.txt"));
  EXPECT_NE(result.exit_code, 0);
  EXPECT_NE(result.output.find("cap"), std::string::npos);
}

TEST_F(CliTest, ModelModeServesSubsetAndRejectsUnknownIds) {
  const std::string db = make_db();
  const std::string model = dir_.file("model.vim");
  ASSERT_EQ(
      run("release build-model --db " + db + " --epsilon 1 --out " + model)
          .exit_code,
      0);

  // Serving a subset of the enrolled records works.
  const std::string subset = dir_.file("subset.emb");
  write_file(subset, "a 1 0 0\nc 0 0 1\n");
  const std::string out = dir_.file("served.emb");
  const CommandResult served = run("release --mode model --model " + model +
                                   " --db " + subset + " --seed 8 --out " +
                                   out);
  EXPECT_EQ(served.exit_code, 0);
  EXPECT_EQ(read_file(out).rfind("# records=2 dim=3\n", 0), 0u);

  // An unenrolled speaker is an explicit error naming the id.
  const std::string ghost = dir_.file("ghost.emb");
  write_file(ghost, "ghost 1 1 1\n");
  const CommandResult rejected = run("release --mode model --model " + model +
                                     " --db " + ghost + " --seed 8 --out " +
                                     out);
  EXPECT_NE(rejected.exit_code, 0);
  EXPECT_NE(rejected.output.find("ghost"), std::string::npos);
  EXPECT_NE(rejected.output.find("feature-level"), std::string::npos);
}

TEST_F(CliTest, SidecarContentFlowsThrough) {
  const std::string db = make_db();
  const std::string sidecar = dir_.file("content.sc");
  // "hello" for record a.
  write_file(sidecar, "a\taGVsbG8=\n");
  const std::string out = dir_.file("released.emb");
  const std::string out_content = dir_.file("released.sc");
  const CommandResult result =
      run("release --db " + db + " --epsilon 1 --seed 3 --out " + out +
          " --content " + sidecar + " --out-content " + out_content);
  EXPECT_EQ(result.exit_code, 0);
  const std::string released = read_file(out_content);
  EXPECT_NE(released.find("a\taGVsbG8=\n"), std::string::npos);
  EXPECT_NE(released.find("b\t\n"), std::string::npos);
}

}  // namespace
