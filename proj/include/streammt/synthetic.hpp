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

#ifndef STREAMMT_SYNTHETIC_HPP
#define STREAMMT_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "streammt/corpus.hpp"
#include "streammt/toy_decoder.hpp"

namespace streammt {

// Shape of the synthetic language. Source words are drawn uniformly from a
// content vocabulary; each sentence ends with one terminator word. Every
// word is assigned a fixed fertility (target expansion length, at most 2)
// drawn once from fertility_weights when the lexicon is built. Terminators
// can draw from their own distribution; leaving it empty reuses
// fertility_weights for them too.
struct GrammarConfig {
  std::size_t content_vocab = 20;
  std::size_t terminator_vocab = 3;
  std::size_t min_sentence_len = 3;  // source words per sentence, terminator included
  std::size_t max_sentence_len = 8;
  std::vector<std::pair<std::size_t, double>> fertility_weights = {{1, 1.0}};
  std::vector<std::pair<std::size_t, double>> terminator_fertility_weights;
  // Optional weighted sentence-length distribution over [min, max]; empty
  // means uniform. Lengths outside the range are rejected.
  std::vector<std::pair<std::size_t, double>> length_weights;
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  ToyLexicon lexicon;
  // Per document: cumulative source-word sentence ends (1-based).
  std::vector<std::vector<std::size_t>> boundaries;
};

// Deterministic by (seed, sizes, config); target sides are the lexicon
// expansions of the source sides, so the corpus is exactly decodable.
SyntheticCorpus generate_synthetic_corpus(std::uint64_t seed,
                                          std::size_t n_docs,
                                          std::size_t sentences_per_doc,
                                          const GrammarConfig& config);

// Median per-sentence target/source word ratio, the offset the naive
// mechanism runs with.
double median_target_source_ratio(const std::vector<Document>& docs);

}  // namespace streammt

#endif  // STREAMMT_SYNTHETIC_HPP
