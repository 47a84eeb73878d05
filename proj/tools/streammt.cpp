// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// streammt: drive the streaming-translation experiment end to end.
//
//   streammt gen-data  --config exp.json     synthesize corpus splits
//   streammt train     --config exp.json     fit models on train/dev
//   streammt simulate  --config exp.json     sweep (mode, k) over the test set
//   streammt evaluate  --config exp.json     realign, score, significance
//   streammt curve     --config exp.json     re-emit curve.csv from report.json
//
// All randomness derives from the config seed, split per stage, so stages
// can be re-run independently and reproduce byte-identical outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "streammt/config.hpp"
#include "streammt/corpus.hpp"
#include "streammt/errors.hpp"
#include "streammt/evaluation.hpp"
#include "streammt/model_io.hpp"
#include "streammt/pipeline.hpp"
#include "streammt/synthetic.hpp"
#include "streammt/trace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace streammt;

namespace {

constexpr const char* kOutputRootEnv = "STREAMMT_OUTPUT_ROOT";

// Flag values shared by every subcommand; only flags the user actually set
// override the config file.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_root;
  std::optional<std::size_t> k_min;
  std::optional<std::size_t> k_max;
  std::vector<std::string> modes;
};

void add_common_options(CLI::App* cmd, Overrides* over) {
  cmd->add_option("-c,--config", over->config_path,
                  "experiment config file (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", over->seed, "override the experiment seed");
  cmd->add_option("-o,--out", over->output_root, "override the output root");
  cmd->add_option("--k-min", over->k_min, "override the smallest wait-k");
  cmd->add_option("--k-max", over->k_max, "override the largest wait-k");
  cmd->add_option("--mode", over->modes,
                  "override the mode list (repeatable)");
}

// Precedence for the output root: --out flag, then STREAMMT_OUTPUT_ROOT,
// then the config file, then the built-in default.
ExperimentConfig resolve_config(const Overrides& over) {
  ExperimentConfig config;
  if (!over.config_path.empty()) {
    config = load_config(over.config_path);
  }
  if (const char* env = std::getenv(kOutputRootEnv)) {
    if (*env != '\0') {
      config.output_root = env;
    }
  }
  if (over.seed) config.seed = *over.seed;
  if (over.output_root) config.output_root = *over.output_root;
  if (over.k_min) config.k_min = *over.k_min;
  if (over.k_max) config.k_max = *over.k_max;
  if (!over.modes.empty()) config.modes = over.modes;
  validate_config(config);
  return config;
}

fs::path data_dir(const ExperimentConfig& c) { return c.output_root / "data"; }
fs::path models_dir(const ExperimentConfig& c) {
  return c.output_root / "models";
}
fs::path traces_dir(const ExperimentConfig& c, const std::string& mode,
                    std::size_t k) {
  return c.output_root / "traces" / mode / ("k" + std::to_string(k));
}
fs::path eval_dir(const ExperimentConfig& c) { return c.output_root / "eval"; }

struct Split {
  std::vector<Document> docs;
  std::vector<std::vector<std::size_t>> boundaries;
};

void save_split(const std::vector<Document>& docs,
                const std::vector<std::vector<std::size_t>>& bounds,
                const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    save_document(docs[d], dir / (docs[d].id + ".tsv"));
    save_boundaries(bounds[d], dir / (docs[d].id + ".bounds"));
  }
}

Split load_split(const fs::path& dir) {
  Split split;
  split.docs = load_documents(dir);
  for (const Document& doc : split.docs) {
    split.boundaries.push_back(load_boundaries(dir / (doc.id + ".bounds")));
  }
  return split;
}

TrainedModels load_models(const ExperimentConfig& config) {
  const fs::path dir = models_dir(config);
  TrainedModels models;
  models.reverse = load_reverse_model(dir / "reverse_model.json");
  models.linreg = load_linreg(dir / "linreg.json");
  auto [weights, names] = load_weights(dir / "weights.json");
  models.weights = std::move(weights);
  models.feature_names = std::move(names);
  models.naive_ratio = load_naive_ratio(dir / "naive_ratio.json");

  // The stored weights must line up with the features this config enables.
  std::vector<std::string> expected;
  assemble_features(config.use_reverse_mt, config.use_linreg, models.reverse,
                    models.linreg, &expected);
  if (expected != models.feature_names) {
    throw ConfigError(
        "stored feature weights do not match the configured feature set");
  }
  return models;
}

int cmd_gen_data(const ExperimentConfig& config) {
  const CorpusParams& cp = config.corpus;
  const std::size_t total = cp.train_docs + cp.dev_docs + cp.test_docs;
  SyntheticCorpus corpus =
      generate_synthetic_corpus(stage_seed(config.seed, "data"), total,
                                cp.sentences_per_doc, cp.grammar);

  // One corpus, one lexicon, three contiguous slices.
  auto slice = [&](std::size_t begin, std::size_t count, const char* name) {
    const std::vector<Document> docs(corpus.documents.begin() + begin,
                                     corpus.documents.begin() + begin + count);
    const std::vector<std::vector<std::size_t>> bounds(
        corpus.boundaries.begin() + begin,
        corpus.boundaries.begin() + begin + count);
    save_split(docs, bounds, data_dir(config) / name);
  };
  slice(0, cp.train_docs, "train");
  slice(cp.train_docs, cp.dev_docs, "dev");
  slice(cp.train_docs + cp.dev_docs, cp.test_docs, "test");
  corpus.lexicon.save(data_dir(config) / "lexicon.tsv");
  save_config(config, config.output_root / "config.json");

  json out{{"status", "ok"},
           {"documents", total},
           {"data_dir", data_dir(config).string()}};
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_train(const ExperimentConfig& config) {
  const Split train = load_split(data_dir(config) / "train");
  const Split dev = load_split(data_dir(config) / "dev");
  const TrainedModels models = train_models(train.docs, dev.docs, config);

  const fs::path dir = models_dir(config);
  fs::create_directories(dir);
  save_reverse_model(models.reverse, dir / "reverse_model.json");
  save_linreg(models.linreg, dir / "linreg.json");
  save_weights(models.weights, models.feature_names, dir / "weights.json");
  save_naive_ratio(models.naive_ratio, dir / "naive_ratio.json");

  json log{{"em_log_likelihood", models.em_stats.log_likelihood},
           {"weight_initial_loss", models.weight_log.initial_loss},
           {"weight_epoch_losses", models.weight_log.epoch_losses},
           {"weight_final_loss", models.weight_log.final_loss()},
           {"feature_names", models.feature_names},
           {"lambda", models.weights.lambda},
           {"naive_ratio", models.naive_ratio},
           {"linreg", {{"theta_mu", models.linreg.theta_mu},
                       {"theta_sigma", models.linreg.theta_sigma}}}};
  std::ofstream log_out(dir / "training_log.json");
  if (!log_out) {
    throw IoError("cannot write training log: " +
                  (dir / "training_log.json").string());
  }
  log_out << log.dump(2) << '\n';

  json out{{"status", "ok"},
           {"models_dir", dir.string()},
           {"weight_final_loss", models.weight_log.final_loss()}};
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_simulate(const ExperimentConfig& config) {
  const ToyLexicon lexicon = ToyLexicon::load(data_dir(config) / "lexicon.tsv");
  const TrainedModels models = load_models(config);
  const Split test = load_split(data_dir(config) / "test");

  std::size_t written = 0;
  json failures = json::array();
  for (const std::string& mode : config.modes) {
    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
      const fs::path dir = traces_dir(config, mode, k);
      fs::create_directories(dir);
      for (std::size_t d = 0; d < test.docs.size(); ++d) {
        const Document& doc = test.docs[d];
        try {
          const SessionTrace trace = simulate_document(
              mode, doc, test.boundaries[d], lexicon, models, k, config);
          save_trace(trace, dir / (doc.id + ".jsonl"));
          ++written;
        } catch (const Error& e) {
          // One broken video must not kill the sweep: record and move on.
          std::ofstream err(dir / (doc.id + ".error"));
          err << e.what() << '\n';
          failures.push_back({{"mode", mode},
                              {"k", k},
                              {"doc", doc.id},
                              {"message", e.what()}});
        }
      }
    }
  }

  json out{{"status", failures.empty() ? "ok" : "partial"},
           {"traces", written},
           {"failures", failures}};
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_evaluate(const ExperimentConfig& config) {
  const Split test = load_split(data_dir(config) / "test");

  json report;
  json missing = json::array();
  json systems = json::array();
  std::vector<CurvePoint> curve;
  // (k -> realigned segments) per mode, for the significance pairing.
  std::map<std::pair<std::string, std::size_t>, SystemEval> evals;

  for (const std::string& mode : config.modes) {
    for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
      const fs::path dir = traces_dir(config, mode, k);
      std::vector<Document> docs;
      std::vector<std::vector<std::size_t>> bounds;
      std::vector<SessionTrace> traces;
      bool complete = true;
      for (std::size_t d = 0; d < test.docs.size(); ++d) {
        const fs::path path = dir / (test.docs[d].id + ".jsonl");
        if (!fs::exists(path)) {
          missing.push_back({{"mode", mode},
                             {"k", k},
                             {"doc", test.docs[d].id},
                             {"path", path.string()}});
          complete = false;
          continue;
        }
        docs.push_back(test.docs[d]);
        bounds.push_back(test.boundaries[d]);
        traces.push_back(load_trace(path));
      }
      if (docs.empty()) {
        continue;  // nothing to score for this (mode, k)
      }
      SystemEval eval = evaluate_system(mode, k, docs, bounds, traces);

      json videos = json::array();
      for (const VideoEval& v : eval.videos) {
        videos.push_back({{"doc", v.doc_id},
                          {"al", v.al},
                          {"edit_distance", v.edit_distance},
                          {"boundary_accuracy", v.boundary_acc}});
      }
      systems.push_back(
          {{"mode", mode},
           {"k", k},
           {"complete", complete},
           {"bleu", eval.quality.bleu},
           {"ngram_precisions", eval.quality.ngram_precisions},
           {"brevity_penalty", eval.quality.brevity_penalty},
           {"mean_al", eval.mean_al},
           {"mean_boundary_accuracy", eval.mean_boundary_accuracy},
           {"videos", videos}});
      curve.push_back({mode, k, eval.mean_al, eval.quality.bleu});
      evals.emplace(std::make_pair(mode, k), std::move(eval));
    }
  }

  // Paired bootstrap between the trained system and the length-ratio
  // baseline at each shared k, over identical segment sets.
  json significance = json::array();
  for (std::size_t k = config.k_min; k <= config.k_max; ++k) {
    const auto a = evals.find({"segfree", k});
    const auto b = evals.find({"naive", k});
    if (a == evals.end() || b == evals.end()) {
      continue;
    }
    if (a->second.ref_segments != b->second.ref_segments) {
      continue;  // different surviving doc subsets; the pairing is invalid
    }
    const double p = bootstrap_significance(
        a->second.hyp_segments, b->second.hyp_segments,
        a->second.ref_segments, 1000, stage_seed(config.seed, "bootstrap"));
    significance.push_back({{"k", k},
                            {"pair", "segfree-vs-naive"},
                            {"delta_bleu", a->second.quality.bleu -
                                               b->second.quality.bleu},
                            {"p", p}});
  }

  report["status"] = missing.empty() ? "ok" : "warning";
  report["seed"] = config.seed;
  report["missing"] = missing;
  report["systems"] = systems;
  report["significance"] = significance;

  fs::create_directories(eval_dir(config));
  std::ofstream out(eval_dir(config) / "report.json");
  if (!out) {
    throw IoError("cannot write report: " +
                  (eval_dir(config) / "report.json").string());
  }
  out << report.dump(2) << '\n';
  emit_curve(curve, eval_dir(config) / "curve.csv");

  json summary{{"status", report["status"]},
               {"systems", systems.size()},
               {"missing", missing.size()},
               {"report", (eval_dir(config) / "report.json").string()}};
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_curve(const ExperimentConfig& config) {
  const fs::path report_path = eval_dir(config) / "report.json";
  std::ifstream in(report_path);
  if (!in) {
    throw IoError("cannot read report: " + report_path.string());
  }
  json report;
  try {
    in >> report;
  } catch (const json::exception& e) {
    throw DataError("malformed report " + report_path.string() + ": " +
                    e.what());
  }

  std::vector<CurvePoint> curve;
  for (const json& sys : report.at("systems")) {
    curve.push_back({sys.at("mode").get<std::string>(),
                     sys.at("k").get<std::size_t>(),
                     sys.at("mean_al").get<double>(),
                     sys.at("bleu").get<double>()});
  }
  const fs::path csv_path = eval_dir(config) / "curve.csv";
  emit_curve(curve, csv_path);

  std::ifstream csv(csv_path);
  std::cout << csv.rdbuf();
  return 0;
}

void print_error_record(const std::string& type, const std::string& message) {
  json record{{"error", {{"type", type}, {"message", message}}}};
  std::cerr << record.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segmentation-free streaming translation experiment driver"};
  app.require_subcommand(1);

  Overrides over;
  CLI::App* gen = app.add_subcommand("gen-data", "synthesize corpus splits");
  CLI::App* train = app.add_subcommand("train", "fit models on train/dev");
  CLI::App* simulate =
      app.add_subcommand("simulate", "run the (mode, k) sweep on the test set");
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score traces and emit report + curve");
  CLI::App* curve =
      app.add_subcommand("curve", "re-emit curve.csv from an existing report");
  for (CLI::App* cmd : {gen, train, simulate, evaluate, curve}) {
    add_common_options(cmd, &over);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error_record("usage", e.what());
    return 1;
  }

  try {
    const ExperimentConfig config = resolve_config(over);
    if (gen->parsed()) return cmd_gen_data(config);
    if (train->parsed()) return cmd_train(config);
    if (simulate->parsed()) return cmd_simulate(config);
    if (evaluate->parsed()) return cmd_evaluate(config);
    return cmd_curve(config);
  } catch (const ConfigError& e) {
    print_error_record("config", e.what());
    return 1;
  } catch (const DataError& e) {
    print_error_record("data", e.what());
    return 2;
  } catch (const IoError& e) {
    print_error_record("io", e.what());
    return 2;
  } catch (const Error& e) {
    print_error_record("runtime", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error_record("internal", e.what());
    return 3;
  }
}
