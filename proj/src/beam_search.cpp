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

#include "streammt/beam_search.hpp"

#include <algorithm>
#include <cmath>

#include "streammt/errors.hpp"

namespace streammt {

namespace {

std::vector<Token> extend_context(const std::vector<Token>& target_context,
                                  const std::vector<std::string>& extra) {
  std::vector<Token> ctx = target_context;
  std::size_t next =
      ctx.empty() ? 0 : ctx.back().stream_index + 1;
  for (const std::string& w : extra) {
    ctx.push_back(Token{w, next++});
  }
  return ctx;
}

Hypothesis greedy_rollout(const IncrementalDecoder& decoder,
                          const std::vector<Token>& source_context,
                          const std::vector<Token>& target_context,
                          std::size_t max_new) {
  Hypothesis hyp;
  for (std::size_t step = 0; step < max_new; ++step) {
    const Distribution dist = decoder.next_distribution(
        source_context, extend_context(target_context, hyp.tokens));
    const std::string* best = nullptr;
    double best_p = 0.0;
    for (const auto& [w, p] : dist) {
      if (p > best_p) {
        best_p = p;
        best = &w;
      }
    }
    if (best == nullptr) break;
    hyp.tokens.push_back(*best);
    hyp.log_score += std::log(best_p);
    if (is_sep(hyp.tokens.back())) break;
  }
  return hyp;
}

}  // namespace

Hypothesis speculative_beam_search(const IncrementalDecoder& decoder,
                                   const std::vector<Token>& source_context,
                                   const std::vector<Token>& target_context,
                                   std::size_t beam_size,
                                   std::size_t max_new) {
  if (beam_size == 0) {
    throw ConfigError("beam size must be at least 1");
  }
  if (max_new == 0) {
    throw ConfigError("speculative rollout needs at least one step");
  }

  std::vector<Hypothesis> live{Hypothesis{}};
  std::vector<Hypothesis> finished;
  for (std::size_t step = 0; step < max_new && !live.empty(); ++step) {
    std::vector<Hypothesis> candidates;
    for (const Hypothesis& hyp : live) {
      const Distribution dist = decoder.next_distribution(
          source_context, extend_context(target_context, hyp.tokens));
      for (const auto& [w, p] : dist) {
        if (p <= 0.0) continue;
        Hypothesis next = hyp;
        next.tokens.push_back(w);
        next.log_score += std::log(p);
        if (next.finished()) {
          finished.push_back(std::move(next));
        } else {
          candidates.push_back(std::move(next));
        }
      }
    }
    // Distribution keys are sorted, so candidate order is deterministic and
    // stable sorting gives a reproducible beam under ties.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Hypothesis& a, const Hypothesis& b) {
                       return a.log_score > b.log_score;
                     });
    if (candidates.size() > beam_size) candidates.resize(beam_size);
    live = std::move(candidates);
  }

  const Hypothesis* best = nullptr;
  for (const Hypothesis& hyp : finished) {
    if (best == nullptr || hyp.log_score > best->log_score) best = &hyp;
  }
  for (const Hypothesis& hyp : live) {
    if (best == nullptr || hyp.log_score > best->log_score) best = &hyp;
  }

  Hypothesis greedy =
      greedy_rollout(decoder, source_context, target_context, max_new);
  if (best == nullptr || (!greedy.tokens.empty() &&
                          greedy.log_score > best->log_score)) {
    if (greedy.tokens.empty()) {
      throw DecoderStateError("decoder produced no expandable tokens");
    }
    return greedy;
  }
  return *best;
}

}  // namespace streammt
