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

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voiceind/audit.hpp"
#include "voiceind/error.hpp"
#include "voiceind/mechanism.hpp"
#include "voiceind/metric.hpp"
#include "voiceind/release.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/synthetic.hpp"
#include "voiceind/textio.hpp"
#include "voiceind/voiceprint.hpp"

namespace {

using nlohmann::json;
using namespace voiceind;

// Fixed default seed, so every run is reproducible unless overridden via
// --seed or VOICEIND_SEED.
constexpr std::uint64_t kDefaultSeed = 1729;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("VOICEIND_SEED")) {
    std::uint64_t value = 0;
    const std::string text(env);
    const auto result =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
      throw Error("VOICEIND_SEED is not an unsigned integer: '" + text + "'");
    }
    return value;
  }
  return kDefaultSeed;
}

std::size_t default_audit_cap() {
  if (const char* env = std::getenv("VOICEIND_AUDIT_CAP")) {
    std::size_t value = 0;
    const std::string text(env);
    const auto result =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
      throw Error("VOICEIND_AUDIT_CAP is not an unsigned integer: '" + text +
                  "'");
    }
    return value;
  }
  return kDefaultAuditCap;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

// Prior file: one `<id> <probability>` per line, every database record
// exactly once.
std::vector<double> load_prior(const VoiceprintDatabase& db,
                               const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open prior file '" + path + "'");
  std::vector<double> prior(db.size(), -1.0);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string id;
    double p = 0.0;
    if (!(fields >> id)) continue;
    if (id.front() == '#') continue;
    if (!(fields >> p)) {
      throw ParseError(line_number, path + ": missing probability for '" +
                                        id + "'");
    }
    const auto index = db.index_of(id);
    if (!index) {
      throw ParseError(line_number,
                       path + ": unknown record id \"" + id + "\"");
    }
    if (prior[*index] >= 0.0) {
      throw ParseError(line_number, path + ": duplicate prior for '" + id +
                                        "'");
    }
    prior[*index] = p;
  }
  for (std::size_t i = 0; i < prior.size(); ++i) {
    if (prior[i] < 0.0) {
      throw Error(path + ": no prior for record '" + db.record(i).id() + "'");
    }
  }
  return prior;
}

struct CommonOptions {
  std::uint64_t seed = default_seed();
  unsigned threads = 0;
  std::size_t dim = 0;  // 0 = infer from the file
};

void add_seed_option(CLI::App* cmd, CommonOptions* common) {
  cmd->add_option("--seed", common->seed,
                  "Random seed (default " + std::to_string(kDefaultSeed) +
                      ", env VOICEIND_SEED)");
}

void add_threads_option(CLI::App* cmd, CommonOptions* common) {
  cmd->add_option("--threads", common->threads,
                  "Worker threads, 0 = machine parallelism; the output does "
                  "not depend on this");
}

void add_dim_option(CLI::App* cmd, CommonOptions* common) {
  cmd->add_option("--dim", common->dim,
                  "Embedding dimension, 0 = infer from the file");
}

void print_audit_report(const AuditReport& report, std::ostream& out) {
  out << "voice-indistinguishability audit\n";
  out << "  records (n)             " << report.n << "\n";
  out << "  epsilon                 " << format_sig12(report.epsilon) << "\n";
  out << "  tolerance               " << format_sig12(report.tolerance)
      << "\n";
  out << "  effective epsilon       "
      << format_sig12(report.max_log_ratio_over_distance) << "\n";
  out << "  worst triple            x=" << report.worst_triple.x_id
      << " x'=" << report.worst_triple.x_prime_id
      << " output=" << report.worst_triple.output_id << "\n";
  out << "  equal-distance max gap  "
      << format_sig12(report.max_equal_distance_gap) << "\n";
  out << "  factor-1 bound (e^{eps*d})    "
      << (report.passes_factor1_bound ? "PASS" : "FAIL") << "\n";
  out << "  factor-2 bound (e^{2*eps*d})  "
      << (report.passes_factor2_bound ? "PASS" : "FAIL") << "\n";
}

void print_bayes_report(const BayesBoundReport& report,
                        const std::string& prior_label, std::ostream& out) {
  out << "bayes posterior audit (prior: " << prior_label << ")\n";
  out << "  identity max gap        " << format_sig12(report.max_identity_gap)
      << "\n";
  out << "  identity within tol     "
      << (report.identity_holds ? "PASS" : "FAIL") << "\n";
  out << "  max info gain over d    "
      << format_sig12(report.max_log_gain_over_distance) << "\n";
  out << "  factor-1 bound          "
      << (report.passes_factor1_bound ? "PASS" : "FAIL") << "\n";
  out << "  factor-2 bound          "
      << (report.passes_factor2_bound ? "PASS" : "FAIL") << "\n";
}

json audit_to_json(const AuditReport& report) {
  return json{{"n", report.n},
              {"epsilon", report.epsilon},
              {"tolerance", report.tolerance},
              {"effective_epsilon", report.max_log_ratio_over_distance},
              {"worst_triple",
               {{"x", report.worst_triple.x_id},
                {"x_prime", report.worst_triple.x_prime_id},
                {"output", report.worst_triple.output_id}}},
              {"max_equal_distance_gap", report.max_equal_distance_gap},
              {"passes_factor1_bound", report.passes_factor1_bound},
              {"passes_factor2_bound", report.passes_factor2_bound}};
}

json bayes_to_json(const BayesBoundReport& report) {
  return json{{"n", report.n},
              {"epsilon", report.epsilon},
              {"tolerance", report.tolerance},
              {"max_identity_gap", report.max_identity_gap},
              {"identity_holds", report.identity_holds},
              {"max_log_gain_over_distance", report.max_log_gain_over_distance},
              {"passes_factor1_bound", report.passes_factor1_bound},
              {"passes_factor2_bound", report.passes_factor2_bound}};
}

void setup_gen_population(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "gen-population", "Generate a synthetic speaker population");
  auto common = std::make_shared<CommonOptions>();
  auto spec = std::make_shared<PopulationSpec>();
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--speakers", spec->speakers, "Speaker count (default 40)");
  cmd->add_option("--utterances-per-speaker", spec->utterances_per_speaker,
                  "Utterances per speaker (default 1)");
  cmd->add_option("--dim", spec->dim, "Embedding dimension (default 512)");
  cmd->add_option("--concentration", spec->concentration,
                  "Per-speaker concentration; larger = tighter clusters");
  add_seed_option(cmd, common.get());
  cmd->add_option("--out", *out_path, "Output embedding file")->required();
  cmd->callback([common, spec, out_path] {
    const VoiceprintDatabase db =
        generate_population(*spec, SeededRng(common->seed));
    save_database_file(db, *out_path);
    std::cout << "wrote " << db.size() << " records (dim " << db.dim()
              << ") to " << *out_path << "\n";
  });
}

void setup_distance(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "distance", "Angular distance between records, or the full matrix");
  auto common = std::make_shared<CommonOptions>();
  auto db_path = std::make_shared<std::string>();
  auto id_a = std::make_shared<std::string>();
  auto id_b = std::make_shared<std::string>();
  auto matrix_path = std::make_shared<std::string>();
  cmd->add_option("--db", *db_path, "Embedding file")->required();
  auto* opt_a = cmd->add_option("--a", *id_a, "First record id");
  auto* opt_b = cmd->add_option("--b", *id_b, "Second record id");
  auto* opt_matrix =
      cmd->add_option("--matrix", *matrix_path, "Write the full matrix CSV");
  opt_a->needs(opt_b);
  opt_b->needs(opt_a);
  add_dim_option(cmd, common.get());
  add_threads_option(cmd, common.get());
  cmd->callback([common, db_path, id_a, id_b, matrix_path, opt_a,
                 opt_matrix] {
    if (!*opt_a && !*opt_matrix) {
      throw Error("nothing to do: give --a/--b or --matrix");
    }
    const VoiceprintDatabase db = load_database_file(*db_path, common->dim);
    if (*opt_a) {
      const auto ia = db.index_of(*id_a);
      if (!ia) throw Error("unknown record id \"" + *id_a + "\"");
      const auto ib = db.index_of(*id_b);
      if (!ib) throw Error("unknown record id \"" + *id_b + "\"");
      std::cout << format_sig12(
                       angular_distance(db.record(*ia), db.record(*ib)))
                << "\n";
    }
    if (*opt_matrix) {
      const DistanceMatrix matrix =
          DistanceMatrix::compute(db, common->threads);
      std::ofstream out = open_output(*matrix_path);
      matrix.write_csv(out);
      finish_output(out, *matrix_path);
      std::cout << "wrote " << db.size() << "x" << db.size()
                << " distance matrix to " << *matrix_path << "\n";
    }
  });
}

void setup_perturb(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "perturb", "Sample one released candidate for an input voiceprint");
  auto common = std::make_shared<CommonOptions>();
  auto db_path = std::make_shared<std::string>();
  auto record_id = std::make_shared<std::string>();
  auto input_path = std::make_shared<std::string>();
  auto epsilon = std::make_shared<double>(0.0);
  auto dump_path = std::make_shared<std::string>();
  cmd->add_option("--db", *db_path, "Candidate database")->required();
  auto* opt_id = cmd->add_option("--id", *record_id, "Input record id");
  auto* opt_input = cmd->add_option(
      "--input", *input_path, "Embedding file whose first record is the input");
  opt_id->excludes(opt_input);
  cmd->add_option("--epsilon", *epsilon, "Privacy budget")->required();
  auto* dump_opt = cmd->add_option("--dump-distribution", *dump_path,
                                   "Write the full distribution CSV");
  add_seed_option(cmd, common.get());
  add_dim_option(cmd, common.get());
  cmd->callback([common, db_path, record_id, input_path, epsilon, dump_path,
                 opt_id, opt_input, dump_opt] {
    if (!*opt_id && !*opt_input) {
      throw Error("give the input as --id or --input");
    }
    const VoiceprintDatabase db = load_database_file(*db_path, common->dim);
    const Voiceprint x0 = [&] {
      if (*opt_id) {
        const auto index = db.index_of(*record_id);
        if (!index) throw Error("unknown record id \"" + *record_id + "\"");
        return db.record(*index);
      }
      return load_database_file(*input_path, db.dim()).record(0);
    }();

    const PerturbationDistribution dist =
        build_distribution(x0, db, PrivacyBudget(*epsilon));
    SeededRng rng(common->seed);
    const std::size_t chosen = sample_index(dist, rng);
    std::cout << dist.candidate_ids()[chosen] << " "
              << format_sig12(dist.probabilities()[chosen]) << "\n";

    if (*dump_opt) {
      std::ofstream out = open_output(*dump_path);
      out << "candidate_id,distance,probability\n";
      for (std::size_t i = 0; i < dist.size(); ++i) {
        out << dist.candidate_ids()[i] << ','
            << format_sig12(dist.center_distances()[i]) << ','
            << format_sig12(dist.probabilities()[i]) << '\n';
      }
      finish_output(out, *dump_path);
    }
  });
}

struct ReleaseArgs {
  CommonOptions common;
  std::string mode = "feature";
  std::string db_path;
  std::string model_path;
  double epsilon = 0.0;
  std::string out_path;
  std::string provenance_path;
  bool strip_provenance = false;
  bool sticky = false;
  std::string content_path;
  std::string out_content_path;
};

void run_release(const ReleaseArgs& args, bool epsilon_given, bool db_given) {
  ReleaseOptions options;
  options.threads = args.common.threads;
  options.sticky = args.sticky;
  const PassthroughSynthesizer syn;
  const SeededRng rng(args.common.seed);

  std::vector<ProtectedUtterance> released;
  if (args.mode == "feature") {
    if (!db_given) throw Error("--db is required in feature mode");
    if (!epsilon_given) throw Error("--epsilon is required in feature mode");
    const VoiceprintDatabase db =
        load_database_file(args.db_path, args.common.dim);
    const auto utterances =
        args.content_path.empty()
            ? utterances_from_database(db)
            : load_utterances_file(db, args.content_path);
    released = release_feature_level(utterances, db,
                                     PrivacyBudget(args.epsilon), syn, rng,
                                     options);
  } else if (args.mode == "model") {
    if (args.model_path.empty()) {
      throw Error("--model is required with --mode model");
    }
    if (epsilon_given) {
      throw Error("model mode takes epsilon from the model file; drop "
                  "--epsilon");
    }
    const ReleaseModel model = ReleaseModel::load_file(args.model_path);
    const VoiceprintDatabase source =
        db_given ? load_database_file(args.db_path, args.common.dim)
                 : model.database();
    const auto utterances =
        args.content_path.empty()
            ? utterances_from_database(source)
            : load_utterances_file(source, args.content_path);
    released = release_model_level(utterances, model, syn, rng, options);
  } else {
    throw Error("unknown release mode '" + args.mode +
                "' (expected feature or model)");
  }

  {
    std::ofstream out = open_output(args.out_path);
    write_released_database(released, out);
    finish_output(out, args.out_path);
  }
  std::cout << "released " << released.size() << " records to "
            << args.out_path << "\n";

  if (!args.provenance_path.empty() && !args.strip_provenance) {
    std::ofstream out = open_output(args.provenance_path);
    write_provenance_csv(released, out);
    finish_output(out, args.provenance_path);
    std::cout << "wrote provenance to " << args.provenance_path << "\n";
  }
  if (!args.out_content_path.empty()) {
    std::ofstream out = open_output(args.out_content_path);
    write_content_sidecar(released, out);
    finish_output(out, args.out_content_path);
    std::cout << "wrote content sidecar to " << args.out_content_path << "\n";
  }
}

void setup_release(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "release", "Release a voiceprint database under the privacy mechanism");
  auto args = std::make_shared<ReleaseArgs>();

  auto* build = cmd->add_subcommand(
      "build-model", "Precompute the sampling tables for the model-level "
                     "pipeline");
  auto build_db = std::make_shared<std::string>();
  auto build_eps = std::make_shared<double>(0.0);
  auto build_out = std::make_shared<std::string>();
  auto build_common = std::make_shared<CommonOptions>();
  build->add_option("--db", *build_db, "Embedding file")->required();
  build->add_option("--epsilon", *build_eps, "Privacy budget")->required();
  build->add_option("--out", *build_out, "Output model file")->required();
  add_dim_option(build, build_common.get());
  add_threads_option(build, build_common.get());
  build->callback([build_db, build_eps, build_out, build_common] {
    const VoiceprintDatabase db =
        load_database_file(*build_db, build_common->dim);
    const ReleaseModel model = ReleaseModel::build(db, PrivacyBudget(*build_eps),
                                                   build_common->threads);
    model.save_file(*build_out);
    std::cout << "wrote release model (n=" << model.size() << ", dim="
              << db.dim() << ", epsilon=" << format_sig12(model.epsilon())
              << ") to " << *build_out << "\n";
  });

  cmd->add_option("--mode", args->mode, "feature (default) or model")
      ->check(CLI::IsMember({"feature", "model"}));
  auto* opt_db = cmd->add_option("--db", args->db_path, "Embedding file");
  cmd->add_option("--model", args->model_path,
                  "Release model file (model mode)");
  auto* opt_eps =
      cmd->add_option("--epsilon", args->epsilon, "Privacy budget");
  cmd->add_option("--out", args->out_path, "Released embedding file");
  cmd->add_option("--provenance", args->provenance_path,
                  "Write (utterance, candidate, probability) CSV");
  cmd->add_flag("--strip-provenance", args->strip_provenance,
                "Do not emit provenance output");
  cmd->add_flag("--sticky", args->sticky,
                "Reuse one draw per speaker id across repeated utterances");
  cmd->add_option("--content", args->content_path,
                  "Content sidecar for the input records");
  cmd->add_option("--out-content", args->out_content_path,
                  "Write the released content sidecar");
  add_seed_option(cmd, &args->common);
  add_threads_option(cmd, &args->common);
  add_dim_option(cmd, &args->common);

  cmd->callback([args, cmd, build, opt_eps, opt_db] {
    if (build->parsed()) return;
    if (args->out_path.empty()) throw Error("--out is required");
    run_release(*args, static_cast<bool>(*opt_eps),
                static_cast<bool>(*opt_db));
  });
}

void setup_audit(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "audit", "Verify the indistinguishability bounds over all triples");
  auto common = std::make_shared<CommonOptions>();
  auto db_path = std::make_shared<std::string>();
  auto epsilon = std::make_shared<double>(0.0);
  auto tolerance = std::make_shared<double>(kDefaultAuditTolerance);
  auto cap = std::make_shared<std::size_t>(default_audit_cap());
  auto prior_spec = std::make_shared<std::string>();
  auto json_path = std::make_shared<std::string>();
  cmd->add_option("--db", *db_path, "Embedding file")->required();
  cmd->add_option("--epsilon", *epsilon, "Privacy budget")->required();
  cmd->add_option("--tol", *tolerance, "Ratio tolerance (default 1e-9)");
  cmd->add_option("--cap", *cap,
                  "Max database size for the cubic scan (env "
                  "VOICEIND_AUDIT_CAP)");
  auto* opt_prior = cmd->add_option(
      "--prior", *prior_spec,
      "Also audit the posterior bound: 'uniform' or a prior file");
  auto* opt_json =
      cmd->add_option("--json", *json_path, "Write the structured report");
  add_threads_option(cmd, common.get());
  add_dim_option(cmd, common.get());
  cmd->callback([common, db_path, epsilon, tolerance, cap, prior_spec,
                 json_path, opt_prior, opt_json] {
    const VoiceprintDatabase db = load_database_file(*db_path, common->dim);
    const PrivacyBudget eps(*epsilon);
    const AuditReport report =
        verify_voice_ind(db, eps, *tolerance, *cap, common->threads);
    print_audit_report(report, std::cout);

    json output{{"audit", audit_to_json(report)}};
    if (*opt_prior) {
      const std::vector<double> prior =
          (*prior_spec == "uniform")
              ? std::vector<double>(db.size(), 1.0 / db.size())
              : load_prior(db, *prior_spec);
      const BayesBoundReport bayes =
          bayes_bound_check(prior, db, eps, *tolerance, *cap, common->threads);
      print_bayes_report(bayes, *prior_spec, std::cout);
      output["bayes"] = bayes_to_json(bayes);
    }
    if (*opt_json) {
      std::ofstream out = open_output(*json_path);
      out << output.dump(2) << "\n";
      finish_output(out, *json_path);
    }
  });
}

void setup_attack(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "attack", "Nearest-neighbor re-identification against a release");
  auto common = std::make_shared<CommonOptions>();
  auto db_path = std::make_shared<std::string>();
  auto released_path = std::make_shared<std::string>();
  cmd->add_option("--db", *db_path, "Original embedding file")->required();
  cmd->add_option("--released", *released_path, "Released embedding file")
      ->required();
  add_dim_option(cmd, common.get());
  cmd->callback([common, db_path, released_path] {
    const VoiceprintDatabase original =
        load_database_file(*db_path, common->dim);
    const VoiceprintDatabase released =
        load_database_file(*released_path, original.dim());
    const AttackResult result = reidentification_attack(original, released);
    std::cout << "attack    " << result.attack_type << "\n";
    std::cout << "trials    " << result.trials << "\n";
    std::cout << "correct   " << result.correct << "\n";
    std::cout << "accuracy  " << format_sig12(result.accuracy) << "\n";
  });
}

void setup_experiment(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "experiment", "Sweep (n, epsilon) cells and emit a CSV of results");
  auto common = std::make_shared<CommonOptions>();
  auto population_path = std::make_shared<std::string>();
  auto n_values = std::make_shared<std::vector<std::size_t>>();
  auto eps_values = std::make_shared<std::vector<double>>();
  auto trials = std::make_shared<std::size_t>(20);
  auto out_path = std::make_shared<std::string>("-");
  auto no_timing = std::make_shared<bool>(false);
  cmd->add_option("--population", *population_path, "Population embedding file")
      ->required();
  cmd->add_option("--n-values", *n_values, "Database sizes, comma separated")
      ->required()
      ->delimiter(',');
  cmd->add_option("--eps-values", *eps_values,
                  "Privacy budgets, comma separated")
      ->required()
      ->delimiter(',');
  cmd->add_option("--trials", *trials, "Trials per cell (default 20)");
  cmd->add_option("--out", *out_path, "Output CSV path, - for stdout");
  cmd->add_flag("--no-timing", *no_timing,
                "Report 0 for wall times; output then depends only on the "
                "seed");
  add_seed_option(cmd, common.get());
  add_threads_option(cmd, common.get());
  add_dim_option(cmd, common.get());
  cmd->callback([common, population_path, n_values, eps_values, trials,
                 out_path, no_timing] {
    const VoiceprintDatabase population =
        load_database_file(*population_path, common->dim);
    ExperimentOptions options;
    options.measure_time = !*no_timing;
    options.threads = common->threads;
    const auto rows =
        run_experiment_grid(population, *n_values, *eps_values, *trials,
                            SeededRng(common->seed), options);
    if (*out_path == "-") {
      write_experiment_csv(rows, std::cout);
    } else {
      std::ofstream out = open_output(*out_path);
      write_experiment_csv(rows, out);
      finish_output(out, *out_path);
      std::cout << "wrote " << rows.size() << " rows to " << *out_path
                << "\n";
    }
  });
}

void setup_bench(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "bench", "Measure online perturbation time for both pipelines");
  auto common = std::make_shared<CommonOptions>();
  auto sizes = std::make_shared<std::vector<std::size_t>>(
      std::vector<std::size_t>{100, 1000, 10000});
  auto dim = std::make_shared<std::size_t>(512);
  auto epsilon = std::make_shared<double>(1.0);
  cmd->add_option("--sizes", *sizes,
                  "Ascending database sizes (default 100,1000,10000)")
      ->delimiter(',');
  cmd->add_option("--dim", *dim, "Embedding dimension (default 512)");
  cmd->add_option("--epsilon", *epsilon, "Privacy budget (default 1)");
  add_seed_option(cmd, common.get());
  cmd->callback([common, sizes, dim, epsilon] {
    const BenchTable table = bench_perturbation(*sizes, PrivacyBudget(*epsilon),
                                                *dim, SeededRng(common->seed));
    print_bench_table(table, std::cout);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voiceind: metric-privacy perturbation, release and auditing "
               "for speaker embeddings"};
  app.require_subcommand(1);

  try {
    setup_gen_population(app);
    setup_distance(app);
    setup_perturb(app);
    setup_release(app);
    setup_audit(app);
    setup_attack(app);
    setup_experiment(app);
    setup_bench(app);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const voiceind::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
