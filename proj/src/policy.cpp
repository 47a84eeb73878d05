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

#include "streammt/policy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "streammt/beam_search.hpp"
#include "streammt/errors.hpp"
#include "streammt/stream.hpp"

namespace streammt {

WaitKPolicy::WaitKPolicy(std::size_t k) : k_(k) {
  if (k_ == 0) {
    throw ConfigError("wait-k requires k >= 1");
  }
}

bool WaitKPolicy::should_read(std::size_t chunk_source_words,
                              std::size_t chunk_target_words,
                              bool source_available) const {
  // source - target < k, written without unsigned underflow.
  return source_available && chunk_source_words < chunk_target_words + k_;
}

std::size_t naive_boundary(std::size_t target_words, double ratio,
                           std::size_t consumed_source_words,
                           std::size_t chunk_len) {
  if (!(ratio > 0.0)) {
    throw ConfigError("length ratio must be positive");
  }
  double span = std::floor(static_cast<double>(target_words) / ratio) -
                static_cast<double>(consumed_source_words);
  span = std::clamp(span, 0.0, static_cast<double>(chunk_len));
  return static_cast<std::size_t>(span);
}

LogLinearMechanism::LogLinearMechanism(FeatureSet features,
                                       FeatureWeights weights)
    : features_(std::move(features)), weights_(std::move(weights)) {
  if (features_.empty()) {
    throw ConfigError("log-linear mechanism needs at least one feature");
  }
  if (weights_.lambda.size() != features_.size()) {
    throw ConfigError("weight count must match feature count");
  }
}

std::size_t LogLinearMechanism::propose_boundary(
    const BoundaryQuery& query) const {
  const FeatureScores scores =
      score_chunk(features_, query.chunk_source, query.segment);
  return select_boundary(scores, weights_);
}

NaiveMechanism::NaiveMechanism(NaiveOffsetConfig config) : config_(config) {
  if (!(config_.ratio > 0.0)) {
    throw ConfigError("length ratio must be positive");
  }
}

std::size_t NaiveMechanism::propose_boundary(const BoundaryQuery& query) const {
  if (config_.per_segment) {
    return naive_boundary(query.segment.size(), config_.ratio, 0,
                          query.chunk_source.size());
  }
  return naive_boundary(query.total_target_words, config_.ratio,
                        query.consumed_source_words,
                        query.chunk_source.size());
}

std::size_t SourceSepMechanism::propose_boundary(
    const BoundaryQuery& query) const {
  for (std::size_t i = 0; i < query.chunk_source.size(); ++i) {
    if (is_sep(query.chunk_source[i])) return i + 1;
  }
  return query.chunk_source.size();
}

namespace {

SessionTrace run_session(const IncrementalDecoder& decoder,
                         const BoundaryMechanism& mechanism,
                         const std::vector<std::string>& source_words,
                         const SessionOptions& options, bool segmented) {
  const WaitKPolicy policy(options.wait_k);
  const std::size_t max_new =
      options.max_new > 0 ? options.max_new : 2 * options.wait_k;

  for (const std::string& w : source_words) {
    if (w.empty()) {
      throw DataError("source stream contains an empty token");
    }
    if (!segmented && is_sep(w)) {
      throw DataError("unsegmented stream must not contain segment markers");
    }
  }
  if (segmented && !source_words.empty() && is_sep(source_words.front())) {
    throw DataError("stream cannot open with a segment marker");
  }

  SessionTrace trace;
  StreamingHistory history;
  history.max_words = options.history_cap;
  ActiveChunk chunk;
  std::size_t src_pos = 0;             // next stream token to deliver
  std::size_t reads = 0;               // source words read (g)
  std::size_t next_target_index = 0;
  std::size_t consumed_words = 0;      // committed source words, cumulative
  std::size_t total_target_words = 0;
  bool flushing = false;
  std::size_t budget = 0;

  auto commit_segment = [&](std::size_t a_hat) {
    const std::size_t sep_index = next_target_index++;
    trace.events.push_back(TraceEvent::sep(sep_index));
    CommitResult result = commit_to_history(std::move(history),
                                            std::move(chunk), a_hat, sep_index);
    history = std::move(result.history);
    chunk = std::move(result.chunk);
    const SegmentPair& pair = history.pairs.back();
    consumed_words += pair.source_words();
    trace.events.push_back(TraceEvent::commit(
        a_hat, pair.source_words(), pair.target_words(), consumed_words));
    const std::size_t before = history.pairs.size();
    history = truncate_history(std::move(history));
    const std::size_t removed = before - history.pairs.size();
    if (removed > 0) {
      trace.events.push_back(TraceEvent::truncate(
          removed, history.source_words(), history.target_words()));
    }
  };

  auto choose_boundary = [&]() -> std::size_t {
    if (chunk.source.empty()) return 0;
    if (chunk.target_partial.empty() && !segmented) {
      // An empty segment carries no alignment signal; during the final flush
      // it simply closes out whatever source is still pending.
      return chunk.source.size();
    }
    BoundaryQuery query;
    query.chunk_source.reserve(chunk.source.size());
    for (const Token& t : chunk.source) query.chunk_source.push_back(t.surface);
    query.segment.reserve(chunk.target_partial.size());
    for (const Token& t : chunk.target_partial) query.segment.push_back(t.surface);
    query.consumed_source_words = consumed_words;
    query.total_target_words = total_target_words;
    const std::size_t a_hat = mechanism.propose_boundary(query);
    if (a_hat > chunk.source.size()) {
      throw BoundaryDomainError("mechanism placed a boundary beyond the chunk");
    }
    return a_hat;
  };

  while (src_pos < source_words.size() || !chunk.source.empty() ||
         !chunk.target_partial.empty()) {
    const bool source_available = src_pos < source_words.size();
    if (!source_available && !flushing) {
      flushing = true;
      budget = 3 * std::max<std::size_t>(1, count_words(chunk.source)) + 4;
    }
    bool do_read = policy.should_read(count_words(chunk.source),
                                      chunk.target_partial.size(),
                                      source_available);
    if (!do_read) {
      const DecoderContext ctx = session_snapshot(history, chunk);
      const Hypothesis hyp = speculative_beam_search(
          decoder, ctx.source, ctx.target, options.beam, max_new);
      const std::string& tok = hyp.tokens.front();
      if (is_sep(tok) && chunk.target_partial.empty() && source_available) {
        // Closing an empty segment while source remains would stall the
        // session; take the read instead and let the decoder catch up.
        do_read = true;
      } else if (is_sep(tok)) {
        commit_segment(choose_boundary());
      } else {
        Token t{tok, next_target_index++};
        trace.events.push_back(
            TraceEvent::write(t.stream_index, t.surface, reads));
        chunk.target_partial.push_back(std::move(t));
        ++total_target_words;
      }
      if (flushing && !do_read) {
        --budget;
        if (budget == 0 &&
            (!chunk.source.empty() || !chunk.target_partial.empty())) {
          // The drain allowance is spent; close everything pending at once.
          commit_segment(chunk.source.size());
        }
      }
    }
    if (do_read) {
      Token t{source_words[src_pos], src_pos};
      ++src_pos;
      ++reads;
      trace.events.push_back(TraceEvent::read(t.stream_index, t.surface));
      chunk.source.push_back(std::move(t));
      // Markers travel with the word that precedes them: no read event, no
      // word count, no schedule effect.
      while (segmented && src_pos < source_words.size() &&
             is_sep(source_words[src_pos])) {
        chunk.source.push_back(Token{source_words[src_pos], src_pos});
        ++src_pos;
      }
    }
  }

  trace.reindex();
  return trace;
}

}  // namespace

SessionTrace run_segfree_session(const IncrementalDecoder& decoder,
                                 const BoundaryMechanism& mechanism,
                                 const std::vector<std::string>& source_words,
                                 const SessionOptions& options) {
  return run_session(decoder, mechanism, source_words, options, false);
}

SessionTrace run_segmented_session(const IncrementalDecoder& decoder,
                                   const std::vector<std::string>& source_words,
                                   const SessionOptions& options) {
  const SourceSepMechanism mechanism;
  return run_session(decoder, mechanism, source_words, options, true);
}

}  // namespace streammt
