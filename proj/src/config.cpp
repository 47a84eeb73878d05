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

#include "streammt/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "streammt/errors.hpp"

namespace streammt {

namespace {

using nlohmann::json;

constexpr std::string_view kKnownModes[] = {"segfree", "naive",
                                            "segmented-oracle",
                                            "segmented-fixed"};

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

json fertility_table_to_json(
    const std::vector<std::pair<std::size_t, double>>& table) {
  json weights = json::object();
  for (const auto& [fertility, weight] : table) {
    weights[std::to_string(fertility)] = weight;
  }
  return weights;
}

std::vector<std::pair<std::size_t, double>> fertility_table_from_json(
    const json& j) {
  std::vector<std::pair<std::size_t, double>> table;
  for (const auto& [key, value] : j.items()) {
    std::size_t fertility = 0;
    try {
      fertility = static_cast<std::size_t>(std::stoull(key));
    } catch (const std::exception&) {
      throw DataError("weight table keys must be non-negative integers");
    }
    table.emplace_back(fertility, value.get<double>());
  }
  return table;
}

json grammar_to_json(const GrammarConfig& g) {
  json out{{"content_vocab", g.content_vocab},
           {"terminator_vocab", g.terminator_vocab},
           {"min_sentence_len", g.min_sentence_len},
           {"max_sentence_len", g.max_sentence_len},
           {"fertility_weights", fertility_table_to_json(g.fertility_weights)}};
  if (!g.terminator_fertility_weights.empty()) {
    out["terminator_fertility_weights"] =
        fertility_table_to_json(g.terminator_fertility_weights);
  }
  if (!g.length_weights.empty()) {
    out["length_weights"] = fertility_table_to_json(g.length_weights);
  }
  return out;
}

GrammarConfig grammar_from_json(const json& j) {
  GrammarConfig g;
  g.content_vocab = j.value("content_vocab", g.content_vocab);
  g.terminator_vocab = j.value("terminator_vocab", g.terminator_vocab);
  g.min_sentence_len = j.value("min_sentence_len", g.min_sentence_len);
  g.max_sentence_len = j.value("max_sentence_len", g.max_sentence_len);
  if (j.contains("fertility_weights")) {
    g.fertility_weights = fertility_table_from_json(j.at("fertility_weights"));
  }
  if (j.contains("terminator_fertility_weights")) {
    g.terminator_fertility_weights =
        fertility_table_from_json(j.at("terminator_fertility_weights"));
  }
  if (j.contains("length_weights")) {
    g.length_weights = fertility_table_from_json(j.at("length_weights"));
  }
  return g;
}

}  // namespace

bool is_known_mode(std::string_view mode) {
  for (const std::string_view known : kKnownModes) {
    if (mode == known) return true;
  }
  return false;
}

void validate_config(const ExperimentConfig& config) {
  if (config.k_min == 0 || config.k_min > config.k_max) {
    throw ConfigError("policy sweep must satisfy 1 <= k_min <= k_max");
  }
  if (config.beam == 0) {
    throw ConfigError("beam size must be at least 1");
  }
  if (config.modes.empty()) {
    throw ConfigError("at least one mode is required");
  }
  for (const std::string& mode : config.modes) {
    if (!is_known_mode(mode)) {
      throw ConfigError("unknown mode: " + mode);
    }
  }
  if (config.fixed_segment_len == 0) {
    throw ConfigError("fixed segment length must be at least 1");
  }
  if (config.decoder_epsilon < 0.0 || config.decoder_epsilon >= 1.0) {
    throw ConfigError("decoder noise must lie in [0, 1)");
  }
  if (!(config.trainer.learning_rate > 0.0) ||
      !std::isfinite(config.trainer.learning_rate)) {
    throw ConfigError("learning rate must be positive and finite");
  }
  if (config.trainer.em_iterations == 0) {
    throw ConfigError("EM needs at least one iteration");
  }
  if (config.corpus.train_docs == 0 || config.corpus.dev_docs == 0 ||
      config.corpus.test_docs == 0 || config.corpus.sentences_per_doc == 0) {
    throw ConfigError("corpus sizes must be at least 1");
  }
  if (!config.use_reverse_mt && !config.use_linreg) {
    throw ConfigError("at least one boundary feature must be enabled");
  }
}

std::uint64_t stage_seed(std::uint64_t seed, std::string_view stage) {
  return splitmix64(seed ^ fnv1a64(stage));
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed config file " + path.string() + ": " +
                    e.what());
  }
  ExperimentConfig config;
  try {
    config.seed = j.value("seed", config.seed);
    if (j.contains("corpus")) {
      const json& c = j.at("corpus");
      config.corpus.train_docs = c.value("train_docs", config.corpus.train_docs);
      config.corpus.dev_docs = c.value("dev_docs", config.corpus.dev_docs);
      config.corpus.test_docs = c.value("test_docs", config.corpus.test_docs);
      config.corpus.sentences_per_doc =
          c.value("sentences_per_doc", config.corpus.sentences_per_doc);
      if (c.contains("grammar")) {
        config.corpus.grammar = grammar_from_json(c.at("grammar"));
      }
    }
    if (j.contains("features")) {
      const json& f = j.at("features");
      config.use_reverse_mt = f.value("reverse_mt", config.use_reverse_mt);
      config.use_linreg = f.value("linreg", config.use_linreg);
    }
    if (j.contains("trainer")) {
      const json& t = j.at("trainer");
      config.trainer.em_iterations =
          t.value("em_iterations", config.trainer.em_iterations);
      config.trainer.learning_rate =
          t.value("learning_rate", config.trainer.learning_rate);
      config.trainer.epochs = t.value("epochs", config.trainer.epochs);
      config.trainer.prefix_augment =
          t.value("prefix_augment", config.trainer.prefix_augment);
      config.trainer.prefix_independent =
          t.value("prefix_independent", config.trainer.prefix_independent);
    }
    if (j.contains("policy")) {
      const json& p = j.at("policy");
      config.k_min = p.value("k_min", config.k_min);
      config.k_max = p.value("k_max", config.k_max);
      config.history_cap = p.value("history_cap", config.history_cap);
      config.beam = p.value("beam", config.beam);
      config.max_new = p.value("max_new", config.max_new);
    }
    if (j.contains("modes")) {
      config.modes = j.at("modes").get<std::vector<std::string>>();
    }
    config.naive_per_segment =
        j.value("naive_per_segment", config.naive_per_segment);
    config.fixed_segment_len =
        j.value("fixed_segment_len", config.fixed_segment_len);
    config.decoder_epsilon =
        j.value("decoder_epsilon", config.decoder_epsilon);
    if (j.contains("output_root")) {
      config.output_root = j.at("output_root").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw DataError("malformed config file " + path.string() + ": " +
                    e.what());
  }
  validate_config(config);
  return config;
}

void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& path) {
  json j;
  j["seed"] = config.seed;
  j["corpus"] = json{{"train_docs", config.corpus.train_docs},
                     {"dev_docs", config.corpus.dev_docs},
                     {"test_docs", config.corpus.test_docs},
                     {"sentences_per_doc", config.corpus.sentences_per_doc},
                     {"grammar", grammar_to_json(config.corpus.grammar)}};
  j["features"] = json{{"reverse_mt", config.use_reverse_mt},
                       {"linreg", config.use_linreg}};
  j["trainer"] = json{{"em_iterations", config.trainer.em_iterations},
                      {"learning_rate", config.trainer.learning_rate},
                      {"epochs", config.trainer.epochs},
                      {"prefix_augment", config.trainer.prefix_augment},
                      {"prefix_independent", config.trainer.prefix_independent}};
  j["policy"] = json{{"k_min", config.k_min},
                     {"k_max", config.k_max},
                     {"history_cap", config.history_cap},
                     {"beam", config.beam},
                     {"max_new", config.max_new}};
  j["modes"] = config.modes;
  j["naive_per_segment"] = config.naive_per_segment;
  j["fixed_segment_len"] = config.fixed_segment_len;
  j["decoder_epsilon"] = config.decoder_epsilon;
  j["output_root"] = config.output_root.string();
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write config file: " + path.string());
  }
  out << j.dump(2) << '\n';
}

}  // namespace streammt
