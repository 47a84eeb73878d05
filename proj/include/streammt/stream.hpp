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

#ifndef STREAMMT_STREAM_HPP
#define STREAMMT_STREAM_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace streammt {

// Segment delimiter token. It never counts as a word for history caps,
// latency delays or BLEU/AL token totals.
inline constexpr std::string_view kSep = "[SEP]";

inline bool is_sep(std::string_view surface) { return surface == kSep; }

// One word in a stream. The surface form is never empty and stream indices
// are strictly increasing within a stream.
struct Token {
  std::string surface;
  std::size_t stream_index = 0;

  bool operator==(const Token&) const = default;
};

inline bool is_sep(const Token& t) { return is_sep(t.surface); }

// Number of non-SEP tokens.
std::size_t count_words(const std::vector<Token>& tokens);

// Append-only sequence of tokens with contiguous indices starting at 0.
class TokenStream {
 public:
  const Token& append(std::string surface);
  void close() { closed_ = true; }

  bool closed() const { return closed_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_.at(i); }
  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  std::vector<Token> tokens_;
  bool closed_ = false;
};

// The source span currently being translated plus the target words emitted
// for it so far. The source slice is contiguous in the source stream and
// target_partial never contains SEP.
struct ActiveChunk {
  std::vector<Token> source;
  std::vector<Token> target_partial;
};

// A committed (source span, target segment) pair. The source span may be
// empty; the target always ends with exactly one SEP token.
struct SegmentPair {
  std::vector<Token> source;
  std::vector<Token> target;

  std::size_t source_words() const;
  std::size_t target_words() const;  // excludes the trailing SEP
};

// Bounded discourse memory: committed pairs in commit order, capped at
// max_words words per side (SEP tokens do not count).
struct StreamingHistory {
  std::vector<SegmentPair> pairs;
  std::size_t max_words = 50;

  std::size_t source_words() const;
  std::size_t target_words() const;
};

struct CommitResult {
  StreamingHistory history;
  ActiveChunk chunk;
};

// Closes the current target segment: the first a_hat source tokens of the
// chunk and the target words plus a fresh SEP become a new history pair; the
// remaining source tokens form the next active chunk. a_hat = 0 commits an
// empty source span. Raises BoundaryDomainError outside [0, |chunk.source|].
CommitResult commit_to_history(StreamingHistory history, ActiveChunk chunk,
                               std::size_t a_hat);

// Same, with an explicit stream index for the SEP token appended to the
// committed segment (used by sessions that track the emitted target stream).
CommitResult commit_to_history(StreamingHistory history, ActiveChunk chunk,
                               std::size_t a_hat, std::size_t sep_stream_index);

// Drops whole pairs, oldest first, until both sides are within max_words.
StreamingHistory truncate_history(StreamingHistory history);

// The rendered decoder context: history plus active chunk on both sides.
struct DecoderContext {
  std::vector<Token> source;
  std::vector<Token> target;
};

DecoderContext session_snapshot(const StreamingHistory& history,
                                const ActiveChunk& chunk);

}  // namespace streammt

#endif  // STREAMMT_STREAM_HPP
