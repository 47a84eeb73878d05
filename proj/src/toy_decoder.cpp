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
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "streammt/errors.hpp"

namespace streammt {

std::vector<std::string> ToyLexicon::target_vocab() const {
  std::set<std::string> vocab;
  for (const auto& [src, expansion] : entries) {
    vocab.insert(expansion.begin(), expansion.end());
  }
  return {vocab.begin(), vocab.end()};
}

ToyLexicon ToyLexicon::segmented_view() const {
  ToyLexicon view;
  view.entries = entries;
  view.entries[std::string(kSep)] = {};
  view.terminators = {std::string(kSep)};
  return view;
}

void ToyLexicon::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write lexicon file: " + path.string());
  }
  for (const auto& [src, expansion] : entries) {
    out << src << '\t';
    for (std::size_t i = 0; i < expansion.size(); ++i) {
      if (i > 0) out << ' ';
      out << expansion[i];
    }
    if (terminators.count(src) > 0) out << "\tend";
    out << '\n';
  }
}

ToyLexicon ToyLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read lexicon file: " + path.string());
  }
  ToyLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.empty() || fields[0].empty() || fields.size() > 3) {
      throw DataError("bad lexicon entry at " + path.string() + ":" +
                      std::to_string(line_no));
    }
    std::vector<std::string> expansion;
    if (fields.size() >= 2) {
      std::istringstream words(fields[1]);
      std::string w;
      while (words >> w) expansion.push_back(w);
    }
    if (expansion.size() > 2) {
      throw DataError("lexicon fertility above 2 at " + path.string() + ":" +
                      std::to_string(line_no));
    }
    lex.entries[fields[0]] = std::move(expansion);
    if (fields.size() == 3) {
      if (fields[2] != "end") {
        throw DataError("unknown lexicon flag '" + fields[2] + "' at " +
                        path.string() + ":" + std::to_string(line_no));
      }
      lex.terminators.insert(fields[0]);
    }
  }
  return lex;
}

ToyDecoder::ToyDecoder(ToyLexicon lexicon, double epsilon)
    : lexicon_(std::move(lexicon)), epsilon_(epsilon) {
  if (epsilon_ < 0.0 || epsilon_ >= 1.0) {
    throw ConfigError("decoder noise must lie in [0, 1)");
  }
  vocab_ = lexicon_.target_vocab();
  vocab_.push_back(std::string(kSep));
  std::sort(vocab_.begin(), vocab_.end());
}

std::string ToyDecoder::next_token(
    const std::vector<Token>& source_context,
    const std::vector<Token>& target_context) const {
  std::size_t content = 0;  // emitted content words
  std::size_t seps = 0;
  for (const Token& t : target_context) {
    if (is_sep(t)) {
      ++seps;
    } else {
      if (std::find(vocab_.begin(), vocab_.end(), t.surface) == vocab_.end()) {
        throw DecoderStateError("target context word '" + t.surface +
                                "' is not derivable from the lexicon");
      }
      ++content;
    }
  }

  // Walk the source context attributing the first `content` expansions to
  // fully covered words; the first word that would overrun supplies the next
  // content token.
  std::size_t covered = 0;
  std::size_t due_seps = 0;
  std::optional<std::string> next_content;
  for (const Token& t : source_context) {
    const auto entry = lexicon_.entries.find(t.surface);
    const std::size_t fertility =
        entry == lexicon_.entries.end() ? 0 : entry->second.size();
    if (covered + fertility <= content) {
      covered += fertility;
      if (lexicon_.terminators.count(t.surface) > 0) ++due_seps;
      continue;
    }
    next_content = entry->second[content - covered];
    break;
  }

  if (seps < due_seps) return std::string(kSep);
  if (next_content.has_value()) return *next_content;
  return std::string(kSep);
}

Distribution ToyDecoder::next_distribution(
    const std::vector<Token>& source_context,
    const std::vector<Token>& target_context) const {
  const std::string top = next_token(source_context, target_context);
  Distribution dist;
  if (epsilon_ == 0.0 || vocab_.size() < 2) {
    dist[top] = 1.0;
    return dist;
  }
  const double rest = epsilon_ / static_cast<double>(vocab_.size() - 1);
  for (const std::string& w : vocab_) {
    dist[w] = (w == top) ? 1.0 - epsilon_ : rest;
  }
  return dist;
}

}  // namespace streammt
