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

#ifndef STREAMMT_CORPUS_HPP
#define STREAMMT_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace streammt {

struct SentencePair {
  std::vector<std::string> source;
  std::vector<std::string> target;

  bool operator==(const SentencePair&) const = default;
};

// An ordered sequence of sentence pairs from one talk/video.
struct Document {
  std::string id;
  std::vector<SentencePair> pairs;
};

// A training sample: the current sentence pair with as much preceding
// discourse as fits under the history cap, sentences separated by SEP on
// each side. history_* count the tokens (including SEP delimiters) that
// belong to the history portion, so the current pair can be split off.
struct TrainingSample {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::size_t history_source_tokens = 0;
  std::size_t history_target_tokens = 0;

  std::vector<std::string> current_source() const;
  std::vector<std::string> current_target() const;

  bool operator==(const TrainingSample&) const = default;
};

// ASR-style normalization: lowercase, strip sentence punctuation
// (. , ; : ! ? " ( ) em-dash ellipsis), split on whitespace.
std::vector<std::string> normalize_source(std::string_view text);

// One sample per pair; history filled with the most recent preceding pairs
// whose addition keeps both sides within cap words (SEP delimiters and the
// current pair do not count), emitted in discourse order.
std::vector<TrainingSample> build_history_samples(const Document& doc,
                                                  std::size_t cap = 50);

// Truncates the current pair of the sample to a random source prefix length
// l_s ~ uniform{1..|x|}; the target prefix is the proportional length
// max(1, round(|y| * l_s / |x|)), or uniform{1..|y|} when independent=true.
// History is left untouched.
TrainingSample prefix_augment(const TrainingSample& sample,
                              std::mt19937_64& rng, bool independent = false);

// Deterministic core of prefix_augment (exposed for tests / reproducibility).
TrainingSample prefix_with_lengths(const TrainingSample& sample,
                                   std::size_t source_len,
                                   std::size_t target_len);

// Removes SEP tokens from the source side only. Idempotent.
TrainingSample strip_source_sep(TrainingSample sample);

// --- file formats ------------------------------------------------------
// Documents: one file per document, one pair per line, source TAB target,
// tokens space-separated. Boundary files: one line of space-separated
// cumulative sentence-end positions (1-based). Samples: 4 tab-separated
// columns: source, target, history source token count, history target count.

void save_document(const Document& doc, const std::filesystem::path& path);
Document load_document(const std::filesystem::path& path);

void save_boundaries(const std::vector<std::size_t>& ends,
                     const std::filesystem::path& path);
std::vector<std::size_t> load_boundaries(const std::filesystem::path& path);

void save_samples(const std::vector<TrainingSample>& samples,
                  const std::filesystem::path& path);
std::vector<TrainingSample> load_samples(const std::filesystem::path& path);

// All documents in a directory (files matching *.tsv), sorted by filename.
std::vector<Document> load_documents(const std::filesystem::path& dir);

}  // namespace streammt

#endif  // STREAMMT_CORPUS_HPP
