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

#include "streammt/segmenter.hpp"

#include "streammt/errors.hpp"
#include "streammt/stream.hpp"

namespace streammt {

OracleSegmenter::OracleSegmenter(const std::vector<std::size_t>& boundary_ends) {
  std::size_t prev = 0;
  for (std::size_t end : boundary_ends) {
    if (end <= prev) {
      throw DataError("boundary ends must be strictly increasing and >= 1");
    }
    prev = end;
    ends_.insert(end);
  }
}

bool OracleSegmenter::boundary_after(std::size_t source_words_seen,
                                     bool stream_closed) const {
  if (ends_.count(source_words_seen) > 0) return true;
  return stream_closed && source_words_seen > 0;
}

FixedLengthSegmenter::FixedLengthSegmenter(std::size_t length)
    : length_(length) {
  if (length_ == 0) {
    throw ConfigError("segment length must be at least 1");
  }
}

bool FixedLengthSegmenter::boundary_after(std::size_t source_words_seen,
                                          bool stream_closed) const {
  if (source_words_seen > 0 && source_words_seen % length_ == 0) return true;
  return stream_closed && source_words_seen > 0;
}

std::vector<std::string> mark_boundaries(
    const std::vector<std::string>& source_words, const Segmenter& segmenter) {
  std::vector<std::string> marked;
  marked.reserve(source_words.size() + source_words.size() / 4 + 1);
  for (std::size_t i = 0; i < source_words.size(); ++i) {
    if (is_sep(source_words[i])) {
      throw DataError("source stream already contains a segment marker");
    }
    marked.push_back(source_words[i]);
    const bool closed = i + 1 == source_words.size();
    if (segmenter.boundary_after(i + 1, closed)) {
      marked.push_back(std::string(kSep));
    }
  }
  return marked;
}

}  // namespace streammt
