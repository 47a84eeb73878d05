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

#include "streammt/stream.hpp"

#include <utility>

#include "streammt/errors.hpp"

namespace streammt {

const Token& TokenStream::append(std::string surface) {
  if (surface.empty()) {
    throw DataError("token surface must be non-empty");
  }
  if (closed_) {
    throw DataError("cannot append to a closed stream");
  }
  tokens_.push_back(Token{std::move(surface), tokens_.size()});
  return tokens_.back();
}

std::size_t count_words(const std::vector<Token>& tokens) {
  std::size_t n = 0;
  for (const Token& t : tokens) {
    if (!is_sep(t)) ++n;
  }
  return n;
}

std::size_t SegmentPair::source_words() const { return count_words(source); }

std::size_t SegmentPair::target_words() const { return count_words(target); }

std::size_t StreamingHistory::source_words() const {
  std::size_t n = 0;
  for (const SegmentPair& p : pairs) n += p.source_words();
  return n;
}

std::size_t StreamingHistory::target_words() const {
  std::size_t n = 0;
  for (const SegmentPair& p : pairs) n += p.target_words();
  return n;
}

CommitResult commit_to_history(StreamingHistory history, ActiveChunk chunk,
                               std::size_t a_hat) {
  const std::size_t sep_index =
      chunk.target_partial.empty() ? 0
                                   : chunk.target_partial.back().stream_index + 1;
  return commit_to_history(std::move(history), std::move(chunk), a_hat,
                           sep_index);
}

CommitResult commit_to_history(StreamingHistory history, ActiveChunk chunk,
                               std::size_t a_hat,
                               std::size_t sep_stream_index) {
  if (a_hat > chunk.source.size()) {
    throw BoundaryDomainError("a_hat " + std::to_string(a_hat) +
                              " out of range [0, " +
                              std::to_string(chunk.source.size()) + "]");
  }
  for (const Token& t : chunk.target_partial) {
    if (is_sep(t)) {
      throw DataError("active chunk target must not contain SEP");
    }
  }

  SegmentPair pair;
  pair.source.assign(chunk.source.begin(),
                     chunk.source.begin() + static_cast<std::ptrdiff_t>(a_hat));
  pair.target = std::move(chunk.target_partial);
  pair.target.push_back(Token{std::string(kSep), sep_stream_index});
  history.pairs.push_back(std::move(pair));

  ActiveChunk next;
  next.source.assign(chunk.source.begin() + static_cast<std::ptrdiff_t>(a_hat),
                     chunk.source.end());
  return CommitResult{std::move(history), std::move(next)};
}

StreamingHistory truncate_history(StreamingHistory history) {
  std::size_t src = history.source_words();
  std::size_t tgt = history.target_words();
  std::size_t drop = 0;
  while (drop < history.pairs.size() &&
         (src > history.max_words || tgt > history.max_words)) {
    src -= history.pairs[drop].source_words();
    tgt -= history.pairs[drop].target_words();
    ++drop;
  }
  if (drop > 0) {
    history.pairs.erase(history.pairs.begin(),
                        history.pairs.begin() + static_cast<std::ptrdiff_t>(drop));
  }
  return history;
}

DecoderContext session_snapshot(const StreamingHistory& history,
                                const ActiveChunk& chunk) {
  DecoderContext ctx;
  for (const SegmentPair& p : history.pairs) {
    ctx.source.insert(ctx.source.end(), p.source.begin(), p.source.end());
    ctx.target.insert(ctx.target.end(), p.target.begin(), p.target.end());
  }
  ctx.source.insert(ctx.source.end(), chunk.source.begin(), chunk.source.end());
  ctx.target.insert(ctx.target.end(), chunk.target_partial.begin(),
                    chunk.target_partial.end());
  return ctx;
}

}  // namespace streammt
