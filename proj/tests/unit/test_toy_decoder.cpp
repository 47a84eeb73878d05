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

#include "streammt/toy_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "streammt/errors.hpp"
#include "streammt/stream.hpp"

namespace streammt {
namespace {

namespace fs = std::filesystem;

std::vector<Token> tokens(const std::vector<std::string>& words) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.push_back(Token{words[i], i});
  }
  return out;
}

ToyLexicon fixture_lexicon() {
  ToyLexicon lex;
  lex.entries["a"] = {"A"};
  lex.entries["b"] = {"B1", "B2"};
  lex.entries["t"] = {"T"};
  lex.terminators = {"t"};
  return lex;
}

std::string top_of(const Distribution& dist) {
  std::string best;
  double best_p = -1.0;
  for (const auto& [w, p] : dist) {
    if (p > best_p) {
      best_p = p;
      best = w;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("coverage is counted through the expansions in order") {
  const ToyDecoder decoder(fixture_lexicon());
  const std::vector<Token> src = tokens({"a", "b", "t"});

  CHECK(top_of(decoder.next_distribution(src, tokens({}))) == "A");
  CHECK(top_of(decoder.next_distribution(src, tokens({"A"}))) == "B1");
  CHECK(top_of(decoder.next_distribution(src, tokens({"A", "B1"}))) == "B2");
  CHECK(top_of(decoder.next_distribution(src, tokens({"A", "B1", "B2"}))) ==
        "T");
  // Terminator covered but its segment marker not yet emitted.
  CHECK(top_of(decoder.next_distribution(
            src, tokens({"A", "B1", "B2", "T"}))) == std::string(kSep));
  // Everything visible is covered: the decoder can only propose the marker.
  CHECK(top_of(decoder.next_distribution(
            src, tokens({"A", "B1", "B2", "T", std::string(kSep)}))) ==
        std::string(kSep));
}

TEST_CASE("a due separator outranks the next sentence") {
  const ToyDecoder decoder(fixture_lexicon());
  // First sentence fully translated, marker missing, second sentence begun.
  const std::vector<Token> src = tokens({"t", "a"});
  CHECK(top_of(decoder.next_distribution(src, tokens({"T"}))) ==
        std::string(kSep));
  CHECK(top_of(decoder.next_distribution(
            src, tokens({"T", std::string(kSep)}))) == "A");
}

TEST_CASE("noiseless distributions are one-point") {
  const ToyDecoder decoder(fixture_lexicon());
  const Distribution dist =
      decoder.next_distribution(tokens({"a"}), tokens({}));
  REQUIRE(dist.size() == 1);
  CHECK(dist.at("A") == 1.0);
}

TEST_CASE("noisy distributions cover the vocabulary and sum to one") {
  const double eps = 0.1;
  const ToyDecoder decoder(fixture_lexicon(), eps);
  const Distribution dist =
      decoder.next_distribution(tokens({"a", "b", "t"}), tokens({}));
  // Vocabulary: A B1 B2 T plus the separator.
  REQUIRE(dist.size() == 5);
  CHECK(dist.count(std::string(kSep)) == 1);
  CHECK(dist.at("A") == doctest::Approx(1.0 - eps));
  double sum = 0.0;
  for (const auto& [w, p] : dist) {
    CHECK(p > 0.0);
    if (w != "A") CHECK(p == doctest::Approx(eps / 4.0));
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unknown source words have no expansions to cover") {
  const ToyDecoder decoder(fixture_lexicon());
  CHECK(top_of(decoder.next_distribution(tokens({"zzz", "a"}), tokens({}))) ==
        "A");
  // A stream of only unknown words behaves as fully covered.
  CHECK(top_of(decoder.next_distribution(tokens({"zzz"}), tokens({}))) ==
        std::string(kSep));
}

TEST_CASE("the segmented view keys sentence ends to the marker") {
  const ToyLexicon view = fixture_lexicon().segmented_view();
  CHECK(view.terminators == std::set<std::string>{std::string(kSep)});
  CHECK(view.entries.at(std::string(kSep)).empty());
  CHECK(view.entries.at("b") == std::vector<std::string>{"B1", "B2"});

  const ToyDecoder decoder(view);
  const std::vector<Token> src = tokens({"a", "b", std::string(kSep)});
  CHECK(top_of(decoder.next_distribution(src, tokens({}))) == "A");
  CHECK(top_of(decoder.next_distribution(
            src, tokens({"A", "B1", "B2"}))) == std::string(kSep));
  // The natural terminator lost its role: no marker after T alone.
  CHECK(top_of(decoder.next_distribution(tokens({"t", "a"}), tokens({"T"}))) ==
        "A");
}

TEST_CASE("dropping a fully committed sentence does not change the head") {
  const ToyDecoder decoder(fixture_lexicon());
  const std::vector<Token> full_src = tokens({"a", "t", "b", "t"});
  const std::vector<Token> full_tgt =
      tokens({"A", "T", std::string(kSep), "B1"});
  const std::vector<Token> cut_src = tokens({"b", "t"});
  const std::vector<Token> cut_tgt = tokens({"B1"});
  CHECK(decoder.next_distribution(full_src, full_tgt) ==
        decoder.next_distribution(cut_src, cut_tgt));
}

TEST_CASE("lexicons round-trip through files") {
  ToyLexicon lex = fixture_lexicon();
  lex.entries["silent"] = {};  // fertility-0 entry survives the format
  const fs::path path =
      fs::temp_directory_path() /
      ("streammt_lex_" + std::to_string(std::random_device{}()) + ".tsv");
  lex.save(path);
  const ToyLexicon loaded = ToyLexicon::load(path);
  CHECK(loaded.entries == lex.entries);
  CHECK(loaded.terminators == lex.terminators);
  fs::remove(path);

  CHECK_THROWS_AS(ToyLexicon::load("/nonexistent/lex.tsv"), IoError);
}

TEST_CASE("foreign target context words are a decoder state error") {
  const ToyDecoder decoder(fixture_lexicon());
  CHECK_THROWS_AS(
      decoder.next_distribution(tokens({"a"}), tokens({"NOT_A_WORD"})),
      DecoderStateError);
}

TEST_CASE("noise outside the unit interval is rejected") {
  CHECK_THROWS_AS(ToyDecoder(fixture_lexicon(), -0.1), ConfigError);
  CHECK_THROWS_AS(ToyDecoder(fixture_lexicon(), 1.0), ConfigError);
}

}  // namespace streammt
