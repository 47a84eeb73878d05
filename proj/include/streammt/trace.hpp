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

#ifndef STREAMMT_TRACE_HPP
#define STREAMMT_TRACE_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace streammt {

// One session event. Serialized as one JSON object per line:
//   READ     {"type":"READ","i":<source index>,"w":<surface>}
//   WRITE    {"type":"WRITE","i":<target index>,"w":<surface>,"g":<reads>}
//   SEP      {"type":"SEP","i":<target index>}
//   COMMIT   {"type":"COMMIT","a_hat":n,"src_words":n,"tgt_words":n,
//             "src_end":<cumulative source words consumed>}
//   TRUNCATE {"type":"TRUNCATE","removed":n,"src_words":n,"tgt_words":n}
// COMMIT counts describe the committed pair; TRUNCATE counts are the history
// word totals after truncation. "g" is the number of source tokens read when
// the target word was committed.
struct TraceEvent {
  enum class Kind { Read, Write, Sep, Commit, Truncate };

  Kind kind;
  std::size_t index = 0;       // READ: source index, WRITE/SEP: target index
  std::string word;            // READ/WRITE surface
  std::size_t g = 0;           // WRITE: source tokens read so far
  std::size_t a_hat = 0;       // COMMIT
  std::size_t src_words = 0;   // COMMIT: pair size, TRUNCATE: post totals
  std::size_t tgt_words = 0;
  std::size_t src_end = 0;     // COMMIT: cumulative source words consumed
  std::size_t removed = 0;     // TRUNCATE: pairs dropped

  static TraceEvent read(std::size_t i, std::string w);
  static TraceEvent write(std::size_t i, std::string w, std::size_t g);
  static TraceEvent sep(std::size_t i);
  static TraceEvent commit(std::size_t a_hat, std::size_t src_words,
                           std::size_t tgt_words, std::size_t src_end);
  static TraceEvent truncate(std::size_t removed, std::size_t src_words,
                             std::size_t tgt_words);

  std::string to_json_line() const;
  static TraceEvent from_json_line(const std::string& line);
};

// Full record of one streaming session over one video.
struct SessionTrace {
  std::vector<TraceEvent> events;

  // Derived views, kept in sync by the session engine and by load_trace().
  std::vector<std::string> hypothesis;   // content target tokens, in order
  std::vector<std::size_t> delays;       // g per content target token
  std::vector<std::size_t> commit_ends;  // cumulative source consumed per SEP
  std::size_t source_tokens_read = 0;    // J

  std::size_t target_content_tokens() const { return hypothesis.size(); }

  // Rebuilds the derived views from the event list.
  void reindex();
};

void save_trace(const SessionTrace& trace, const std::filesystem::path& path);
SessionTrace load_trace(const std::filesystem::path& path);

}  // namespace streammt

#endif  // STREAMMT_TRACE_HPP
