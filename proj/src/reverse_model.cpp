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

#include "streammt/reverse_model.hpp"

#include <cmath>
#include <set>

#include "streammt/errors.hpp"

namespace streammt {

const std::string ReverseLexicalModel::kNull = "<null>";

double ReverseLexicalModel::lexical(const std::string& src,
                                    const std::string& tgt) const {
  auto row = table.find(tgt);
  if (row == table.end()) return 0.0;
  auto cell = row->second.find(src);
  return cell == row->second.end() ? 0.0 : cell->second;
}

double ReverseLexicalModel::position_factor(
    const std::string& src, const std::vector<std::string>& segment) const {
  double sum = lexical(src, kNull);
  for (const std::string& tgt : segment) {
    sum += lexical(src, tgt);
  }
  const double factor = sum / static_cast<double>(segment.size() + 1);
  return factor > kProbFloor ? factor : kProbFloor;
}

double ReverseLexicalModel::log_likelihood(
    const std::vector<SentencePair>& corpus) const {
  double ll = 0.0;
  for (const SentencePair& pair : corpus) {
    for (const std::string& src : pair.source) {
      ll += std::log(position_factor(src, pair.target));
    }
  }
  return ll;
}

double ReverseLexicalModel::max_normalization_error() const {
  double worst = 0.0;
  for (const auto& [tgt, row] : table) {
    double sum = 0.0;
    for (const auto& [src, p] : row) sum += p;
    worst = std::max(worst, std::fabs(sum - 1.0));
  }
  return worst;
}

ReverseLexicalModel ReverseLexicalModel::train(
    const std::vector<SentencePair>& corpus, std::size_t iterations,
    EmTrainingStats* stats) {
  if (corpus.empty()) {
    throw DataError("reverse model training needs a non-empty corpus");
  }
  if (iterations == 0) {
    throw DataError("reverse model training needs at least one EM iteration");
  }
  for (const SentencePair& pair : corpus) {
    if (pair.source.empty() || pair.target.empty()) {
      throw DataError("reverse model training pairs must be non-empty");
    }
  }

  std::set<std::string> source_vocab;
  for (const SentencePair& pair : corpus) {
    source_vocab.insert(pair.source.begin(), pair.source.end());
  }
  const double uniform = 1.0 / static_cast<double>(source_vocab.size());

  // Sparse table over co-occurring pairs only. Initialized uniformly; the
  // first E-step only uses ratios within a sentence, so this matches a dense
  // uniform initialization exactly.
  ReverseLexicalModel model;
  for (const SentencePair& pair : corpus) {
    for (const std::string& src : pair.source) {
      model.table[kNull][src] = uniform;
      for (const std::string& tgt : pair.target) {
        model.table[tgt][src] = uniform;
      }
    }
  }

  if (stats != nullptr) {
    stats->log_likelihood.clear();
    stats->log_likelihood.push_back(model.log_likelihood(corpus));
  }

  for (std::size_t iter = 0; iter < iterations; ++iter) {
    std::map<std::string, std::map<std::string, double>> counts;
    std::map<std::string, double> totals;

    for (const SentencePair& pair : corpus) {
      for (const std::string& src : pair.source) {
        double denom = model.lexical(src, kNull);
        for (const std::string& tgt : pair.target) {
          denom += model.lexical(src, tgt);
        }
        if (denom <= 0.0) continue;
        const double null_share = model.lexical(src, kNull) / denom;
        counts[kNull][src] += null_share;
        totals[kNull] += null_share;
        for (const std::string& tgt : pair.target) {
          const double share = model.lexical(src, tgt) / denom;
          counts[tgt][src] += share;
          totals[tgt] += share;
        }
      }
    }

    for (auto& [tgt, row] : counts) {
      const double total = totals[tgt];
      if (total <= 0.0) continue;
      for (auto& [src, c] : row) c /= total;
    }
    model.table = std::move(counts);

    if (stats != nullptr) {
      stats->log_likelihood.push_back(model.log_likelihood(corpus));
    }
  }
  return model;
}

double reverse_mt_score(const ReverseLexicalModel& model,
                        const std::vector<std::string>& chunk,
                        const std::vector<std::string>& segment,
                        std::size_t a) {
  if (segment.empty()) {
    throw DataError("reverse_mt_score needs a non-empty target segment");
  }
  if (a < 1 || a > chunk.size()) {
    throw BoundaryDomainError("prefix length " + std::to_string(a) +
                              " out of range [1, " +
                              std::to_string(chunk.size()) + "]");
  }
  double score = 1.0;
  for (std::size_t s = 0; s < a; ++s) {
    score *= model.position_factor(chunk[s], segment);
  }
  return score;
}

}  // namespace streammt
