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

#ifndef STREAMMT_TOY_DECODER_HPP
#define STREAMMT_TOY_DECODER_HPP

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "streammt/decoder.hpp"

namespace streammt {

// Word-for-word translation table: each source word expands to 0..2 target
// words; terminator words mark sentence ends. File format, one entry per
// line: source word, TAB, space-separated target words (may be empty),
// optional third TAB field "end" flagging a terminator.
struct ToyLexicon {
  std::map<std::string, std::vector<std::string>> entries;
  std::set<std::string> terminators;

  // Sorted unique target-side words (SEP not included).
  std::vector<std::string> target_vocab() const;

  // The view a chunk-trained system has of the same data: the source-side
  // SEP marker is a fertility-0 terminator and natural sentence-final words
  // lose their terminator role.
  ToyLexicon segmented_view() const;

  void save(const std::filesystem::path& path) const;
  static ToyLexicon load(const std::filesystem::path& path);
};

// Deterministic lexical decoder. It derives coverage by counting: with T
// emitted content words, the first T target expansions of the source context
// are covered; the next distribution puts mass 1-epsilon on the first
// uncovered expansion (or on SEP when a covered terminator still lacks its
// SEP, or when everything visible is covered) and spreads epsilon uniformly
// over the rest of the vocabulary.
class ToyDecoder : public IncrementalDecoder {
 public:
  explicit ToyDecoder(ToyLexicon lexicon, double epsilon = 0.0);

  Distribution next_distribution(
      const std::vector<Token>& source_context,
      const std::vector<Token>& target_context) const override;

  const ToyLexicon& lexicon() const { return lexicon_; }

 private:
  std::string next_token(const std::vector<Token>& source_context,
                         const std::vector<Token>& target_context) const;

  ToyLexicon lexicon_;
  double epsilon_;
  std::vector<std::string> vocab_;  // target vocab plus SEP, sorted
};

}  // namespace streammt

#endif  // STREAMMT_TOY_DECODER_HPP
