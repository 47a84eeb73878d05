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

#ifndef STREAMMT_SEGMENTER_HPP
#define STREAMMT_SEGMENTER_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace streammt {

// Front-end that cuts the incoming source stream into segments. Queried
// after every source word: does a segment end right here? At stream close a
// final boundary is always implied so the last segment cannot stay open.
class Segmenter {
 public:
  virtual ~Segmenter() = default;

  virtual bool boundary_after(std::size_t source_words_seen,
                              bool stream_closed) const = 0;
};

// Boundaries at known word offsets (1-based ends, strictly increasing).
class OracleSegmenter : public Segmenter {
 public:
  explicit OracleSegmenter(const std::vector<std::size_t>& boundary_ends);

  bool boundary_after(std::size_t source_words_seen,
                      bool stream_closed) const override;

 private:
  std::set<std::size_t> ends_;
};

// A boundary after every `length` words, the classic fixed-window front-end.
class FixedLengthSegmenter : public Segmenter {
 public:
  explicit FixedLengthSegmenter(std::size_t length);

  bool boundary_after(std::size_t source_words_seen,
                      bool stream_closed) const override;

 private:
  std::size_t length_;
};

// Renders the segmenter's decisions into the stream itself: returns the
// source words with a SEP marker inserted after each boundary. Rejects
// inputs that already contain SEP.
std::vector<std::string> mark_boundaries(
    const std::vector<std::string>& source_words, const Segmenter& segmenter);

}  // namespace streammt

#endif  // STREAMMT_SEGMENTER_HPP
