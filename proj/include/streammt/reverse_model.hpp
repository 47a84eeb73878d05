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

#ifndef STREAMMT_REVERSE_MODEL_HPP
#define STREAMMT_REVERSE_MODEL_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "streammt/corpus.hpp"

namespace streammt {

// Lower bound for each per-position factor of the prefix likelihood, keeping
// scores strictly positive for words unseen in training.
inline constexpr double kProbFloor = 1e-10;

struct EmTrainingStats {
  // Log-likelihood of the training corpus under the initial (uniform) model
  // followed by the value after each EM iteration.
  std::vector<double> log_likelihood;
};

// Word-for-word reverse lexicon: t(source word | target word), including a
// NULL target word. Every conditional distribution sums to one.
class ReverseLexicalModel {
 public:
  static const std::string kNull;

  // t(src | tgt); 0 for unseen pairs.
  double lexical(const std::string& src, const std::string& tgt) const;

  // Per-position factor (1/(|segment|+1)) * sum_t t(src|t) over the segment
  // words plus NULL, floored at kProbFloor.
  double position_factor(const std::string& src,
                         const std::vector<std::string>& segment) const;

  // Corpus log-likelihood under the current table (same factorization as
  // reverse_mt_score over full sentences).
  double log_likelihood(const std::vector<SentencePair>& corpus) const;

  // Largest deviation of any conditional distribution from summing to one.
  double max_normalization_error() const;

  // EM from a uniform initialization; `iterations` >= 1.
  static ReverseLexicalModel train(const std::vector<SentencePair>& corpus,
                                   std::size_t iterations,
                                   EmTrainingStats* stats = nullptr);

  // tgt -> (src -> prob); ordered for deterministic serialization.
  std::map<std::string, std::map<std::string, double>> table;
};

// Prefix likelihood p(x_1..x_a | segment): the product of the floored
// per-position factors for the first `a` chunk words. `a` must lie in
// [1, |chunk|] and the segment must be non-empty.
double reverse_mt_score(const ReverseLexicalModel& model,
                        const std::vector<std::string>& chunk,
                        const std::vector<std::string>& segment,
                        std::size_t a);

}  // namespace streammt

#endif  // STREAMMT_REVERSE_MODEL_HPP
