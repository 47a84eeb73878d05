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

#ifndef STREAMMT_BEAM_SEARCH_HPP
#define STREAMMT_BEAM_SEARCH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "streammt/decoder.hpp"
#include "streammt/stream.hpp"

namespace streammt {

// A candidate continuation of the current target context. `tokens` holds
// only the new words (the shared context is not repeated); the score is the
// plain sum of token log probabilities, with no length normalization.
struct Hypothesis {
  std::vector<std::string> tokens;
  double log_score = 0.0;

  bool finished() const {
    return !tokens.empty() && is_sep(tokens.back());
  }
};

// Rolls the decoder forward up to max_new tokens and returns the best
// hypothesis over finished (SEP-terminated) and still-open candidates.
// Expansion stops on SEP. A greedy rollout is always evaluated as well and
// returned when it outscores the beam, so the result never falls below the
// greedy baseline. Callers typically act on tokens.front() only.
Hypothesis speculative_beam_search(const IncrementalDecoder& decoder,
                                   const std::vector<Token>& source_context,
                                   const std::vector<Token>& target_context,
                                   std::size_t beam_size,
                                   std::size_t max_new);

}  // namespace streammt

#endif  // STREAMMT_BEAM_SEARCH_HPP
