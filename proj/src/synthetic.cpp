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

#include "streammt/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <string>

#include "streammt/errors.hpp"

namespace streammt {

namespace {

std::vector<std::string> expansion_for(const std::string& source_word,
                                       std::size_t fertility) {
  // Target tokens are uppercase mirrors of the source word so the mapping
  // stays readable in traces: s7 -> S7 (or S7a S7b at fertility 2).
  std::string base = source_word;
  base[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(base[0])));
  switch (fertility) {
    case 0:
      return {};
    case 1:
      return {base};
    case 2:
      return {base + "a", base + "b"};
    default:
      throw ConfigError("fertility above 2 is not supported");
  }
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(std::uint64_t seed,
                                          std::size_t n_docs,
                                          std::size_t sentences_per_doc,
                                          const GrammarConfig& config) {
  if (n_docs == 0 || sentences_per_doc == 0) {
    throw ConfigError("corpus sizes must be at least 1");
  }
  if (config.content_vocab == 0 || config.terminator_vocab == 0) {
    throw ConfigError("vocabulary sizes must be at least 1");
  }
  if (config.min_sentence_len == 0 ||
      config.min_sentence_len > config.max_sentence_len) {
    throw ConfigError("sentence length range must satisfy 1 <= min <= max");
  }
  if (config.fertility_weights.empty()) {
    throw ConfigError("fertility weights must not be empty");
  }
  const auto check_weights =
      [](const std::vector<std::pair<std::size_t, double>>& table) {
        double weight_sum = 0.0;
        for (const auto& [fertility, weight] : table) {
          if (fertility > 2) {
            throw ConfigError("fertility above 2 is not supported");
          }
          if (!(weight >= 0.0)) {
            throw ConfigError("fertility weights must be non-negative");
          }
          weight_sum += weight;
        }
        if (!(weight_sum > 0.0)) {
          throw ConfigError("fertility weights must have positive total mass");
        }
      };
  check_weights(config.fertility_weights);
  const auto& terminator_table = config.terminator_fertility_weights.empty()
                                     ? config.fertility_weights
                                     : config.terminator_fertility_weights;
  check_weights(terminator_table);
  if (!config.length_weights.empty()) {
    double length_sum = 0.0;
    for (const auto& [len, weight] : config.length_weights) {
      if (len < config.min_sentence_len || len > config.max_sentence_len) {
        throw ConfigError("length weights must stay within [min, max] length");
      }
      if (!(weight >= 0.0)) {
        throw ConfigError("length weights must be non-negative");
      }
      length_sum += weight;
    }
    if (!(length_sum > 0.0)) {
      throw ConfigError("length weights must have positive total mass");
    }
  }

  std::mt19937_64 rng(seed);
  const auto make_picker =
      [](const std::vector<std::pair<std::size_t, double>>& table) {
        std::vector<double> weights;
        weights.reserve(table.size());
        for (const auto& [fertility, weight] : table) {
          weights.push_back(weight);
        }
        return std::discrete_distribution<std::size_t>(weights.begin(),
                                                       weights.end());
      };
  auto pick_fertility = make_picker(config.fertility_weights);
  auto pick_terminator_fertility = make_picker(terminator_table);

  SyntheticCorpus corpus;
  std::vector<std::string> content_words;
  std::vector<std::string> terminator_words;
  for (std::size_t i = 0; i < config.content_vocab; ++i) {
    const std::string w = "s" + std::to_string(i);
    content_words.push_back(w);
    const std::size_t f =
        config.fertility_weights[pick_fertility(rng)].first;
    corpus.lexicon.entries[w] = expansion_for(w, f);
  }
  for (std::size_t i = 0; i < config.terminator_vocab; ++i) {
    const std::string w = "t" + std::to_string(i);
    terminator_words.push_back(w);
    const std::size_t f = terminator_table[pick_terminator_fertility(rng)].first;
    corpus.lexicon.entries[w] = expansion_for(w, f);
    corpus.lexicon.terminators.insert(w);
  }

  std::uniform_int_distribution<std::size_t> pick_uniform_len(
      config.min_sentence_len, config.max_sentence_len);
  std::vector<double> length_mass;
  for (const auto& [len, weight] : config.length_weights) {
    length_mass.push_back(weight);
  }
  std::discrete_distribution<std::size_t> pick_weighted_len(
      length_mass.begin(), length_mass.end());
  const auto pick_len = [&](std::mt19937_64& r) {
    if (config.length_weights.empty()) return pick_uniform_len(r);
    return config.length_weights[pick_weighted_len(r)].first;
  };
  std::uniform_int_distribution<std::size_t> pick_content(
      0, content_words.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_terminator(
      0, terminator_words.size() - 1);

  const int id_width = static_cast<int>(std::to_string(n_docs - 1).size());
  for (std::size_t d = 0; d < n_docs; ++d) {
    Document doc;
    std::string num = std::to_string(d);
    doc.id = "doc" + std::string(
        static_cast<std::size_t>(id_width) - num.size(), '0') + num;
    std::vector<std::size_t> ends;
    std::size_t total_words = 0;
    for (std::size_t s = 0; s < sentences_per_doc; ++s) {
      const std::size_t len = pick_len(rng);
      SentencePair pair;
      for (std::size_t w = 0; w + 1 < len; ++w) {
        pair.source.push_back(content_words[pick_content(rng)]);
      }
      pair.source.push_back(terminator_words[pick_terminator(rng)]);
      for (const std::string& src : pair.source) {
        const auto& expansion = corpus.lexicon.entries.at(src);
        pair.target.insert(pair.target.end(), expansion.begin(),
                           expansion.end());
      }
      total_words += pair.source.size();
      ends.push_back(total_words);
      doc.pairs.push_back(std::move(pair));
    }
    corpus.documents.push_back(std::move(doc));
    corpus.boundaries.push_back(std::move(ends));
  }
  return corpus;
}

double median_target_source_ratio(const std::vector<Document>& docs) {
  std::vector<double> ratios;
  for (const Document& doc : docs) {
    for (const SentencePair& pair : doc.pairs) {
      if (pair.source.empty()) continue;
      ratios.push_back(static_cast<double>(pair.target.size()) /
                       static_cast<double>(pair.source.size()));
    }
  }
  if (ratios.empty()) {
    throw DataError("no sentences to estimate a length ratio from");
  }
  std::sort(ratios.begin(), ratios.end());
  const std::size_t n = ratios.size();
  if (n % 2 == 1) return ratios[n / 2];
  return 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
}

}  // namespace streammt
