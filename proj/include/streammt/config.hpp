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

#ifndef STREAMMT_CONFIG_HPP
#define STREAMMT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "streammt/synthetic.hpp"

namespace streammt {

struct CorpusParams {
  std::size_t train_docs = 10;
  std::size_t dev_docs = 3;
  std::size_t test_docs = 20;
  std::size_t sentences_per_doc = 30;
  GrammarConfig grammar;
};

struct TrainerParams {
  std::size_t em_iterations = 10;
  double learning_rate = 0.1;
  std::size_t epochs = 200;
  bool prefix_augment = true;       // double the weight-training set
  bool prefix_independent = false;  // decouple source/target prefix lengths
};

// One experiment end to end; every stage draws its randomness from `seed`
// through stage_seed() so stages can be re-run independently.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  CorpusParams corpus;
  bool use_reverse_mt = true;
  bool use_linreg = true;
  TrainerParams trainer;
  std::size_t k_min = 1;
  std::size_t k_max = 10;
  std::vector<std::string> modes = {"segfree", "naive", "segmented-oracle"};
  std::size_t history_cap = 50;
  std::size_t beam = 4;
  std::size_t max_new = 0;  // 0 = 2k per session
  bool naive_per_segment = false;
  std::size_t fixed_segment_len = 8;  // segmented-fixed window
  double decoder_epsilon = 0.0;
  std::filesystem::path output_root = "out";
};

// Modes the simulate/evaluate commands accept.
bool is_known_mode(std::string_view mode);

// Throws ConfigError on out-of-range fields or unknown modes.
void validate_config(const ExperimentConfig& config);

// Decorrelated per-stage seed: splitmix64(seed ^ fnv1a64(stage)).
std::uint64_t stage_seed(std::uint64_t seed, std::string_view stage);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& path);

}  // namespace streammt

#endif  // STREAMMT_CONFIG_HPP
