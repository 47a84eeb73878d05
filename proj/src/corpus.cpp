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

#include "streammt/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "streammt/errors.hpp"
#include "streammt/stream.hpp"

namespace streammt {

namespace {

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::size_t parse_count(const std::string& text, const std::string& where) {
  try {
    std::size_t end = 0;
    const unsigned long long v = std::stoull(text, &end);
    if (end != text.size()) throw DataError("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw DataError("bad count '" + text + "' in " + where);
  }
}

std::size_t words_in(const std::vector<std::string>& side) {
  std::size_t n = 0;
  for (const std::string& w : side) {
    if (!is_sep(w)) ++n;
  }
  return n;
}

}  // namespace

std::vector<std::string> TrainingSample::current_source() const {
  if (history_source_tokens > source.size()) {
    throw DataError("history token count exceeds the sample source length");
  }
  return {source.begin() +
              static_cast<std::ptrdiff_t>(history_source_tokens),
          source.end()};
}

std::vector<std::string> TrainingSample::current_target() const {
  if (history_target_tokens > target.size()) {
    throw DataError("history token count exceeds the sample target length");
  }
  return {target.begin() +
              static_cast<std::ptrdiff_t>(history_target_tokens),
          target.end()};
}

std::vector<std::string> normalize_source(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    // Multi-byte marks first: em-dash and ellipsis.
    if (i + 3 <= text.size() && (text.compare(i, 3, "\xE2\x80\x94") == 0 ||
                                 text.compare(i, 3, "\xE2\x80\xA6") == 0)) {
      cleaned.push_back(' ');
      i += 3;
      continue;
    }
    const char c = text[i++];
    switch (c) {
      case '.': case ',': case ';': case ':': case '!': case '?':
      case '"': case '(': case ')':
        cleaned.push_back(' ');
        break;
      default:
        cleaned.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return split_words(cleaned);
}

std::vector<TrainingSample> build_history_samples(const Document& doc,
                                                  std::size_t cap) {
  if (cap == 0) {
    throw ConfigError("history cap must be at least 1");
  }
  std::vector<TrainingSample> samples;
  samples.reserve(doc.pairs.size());
  for (std::size_t p = 0; p < doc.pairs.size(); ++p) {
    // Walk back over whole sentences while both sides stay within the cap.
    std::size_t first = p;
    std::size_t src_words = 0;
    std::size_t tgt_words = 0;
    while (first > 0) {
      const SentencePair& prev = doc.pairs[first - 1];
      const std::size_t s = words_in(prev.source);
      const std::size_t t = words_in(prev.target);
      if (src_words + s > cap || tgt_words + t > cap) break;
      src_words += s;
      tgt_words += t;
      --first;
    }
    TrainingSample sample;
    for (std::size_t q = first; q < p; ++q) {
      const SentencePair& prev = doc.pairs[q];
      sample.source.insert(sample.source.end(), prev.source.begin(),
                           prev.source.end());
      sample.source.push_back(std::string(kSep));
      sample.target.insert(sample.target.end(), prev.target.begin(),
                           prev.target.end());
      sample.target.push_back(std::string(kSep));
    }
    sample.history_source_tokens = sample.source.size();
    sample.history_target_tokens = sample.target.size();
    sample.source.insert(sample.source.end(), doc.pairs[p].source.begin(),
                         doc.pairs[p].source.end());
    sample.target.insert(sample.target.end(), doc.pairs[p].target.begin(),
                         doc.pairs[p].target.end());
    samples.push_back(std::move(sample));
  }
  return samples;
}

TrainingSample prefix_with_lengths(const TrainingSample& sample,
                                   std::size_t source_len,
                                   std::size_t target_len) {
  const std::vector<std::string> cur_src = sample.current_source();
  const std::vector<std::string> cur_tgt = sample.current_target();
  if (source_len == 0 || source_len > cur_src.size() || target_len == 0 ||
      target_len > cur_tgt.size()) {
    throw DataError("prefix length outside the current sentence");
  }
  TrainingSample out;
  out.history_source_tokens = sample.history_source_tokens;
  out.history_target_tokens = sample.history_target_tokens;
  out.source.assign(sample.source.begin(),
                    sample.source.begin() +
                        static_cast<std::ptrdiff_t>(
                            sample.history_source_tokens + source_len));
  out.target.assign(sample.target.begin(),
                    sample.target.begin() +
                        static_cast<std::ptrdiff_t>(
                            sample.history_target_tokens + target_len));
  return out;
}

TrainingSample prefix_augment(const TrainingSample& sample,
                              std::mt19937_64& rng, bool independent) {
  const std::size_t nx = sample.current_source().size();
  const std::size_t ny = sample.current_target().size();
  if (nx == 0 || ny == 0) {
    throw DataError("prefix augmentation needs a non-empty current sentence");
  }
  std::uniform_int_distribution<std::size_t> pick_src(1, nx);
  const std::size_t ls = pick_src(rng);
  std::size_t lt;
  if (independent) {
    std::uniform_int_distribution<std::size_t> pick_tgt(1, ny);
    lt = pick_tgt(rng);
  } else {
    lt = static_cast<std::size_t>(std::llround(
        static_cast<double>(ny) * static_cast<double>(ls) /
        static_cast<double>(nx)));
    lt = std::clamp<std::size_t>(lt, 1, ny);
  }
  return prefix_with_lengths(sample, ls, lt);
}

TrainingSample strip_source_sep(TrainingSample sample) {
  std::vector<std::string> kept;
  kept.reserve(sample.source.size());
  std::size_t removed_history = 0;
  for (std::size_t i = 0; i < sample.source.size(); ++i) {
    if (is_sep(sample.source[i])) {
      if (i < sample.history_source_tokens) ++removed_history;
      continue;
    }
    kept.push_back(std::move(sample.source[i]));
  }
  sample.source = std::move(kept);
  sample.history_source_tokens -= removed_history;
  return sample;
}

void save_document(const Document& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write document file: " + path.string());
  }
  for (const SentencePair& pair : doc.pairs) {
    out << join_words(pair.source) << '\t' << join_words(pair.target) << '\n';
  }
}

Document load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read document file: " + path.string());
  }
  Document doc;
  doc.id = path.stem().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 2) {
      throw DataError("expected 'source TAB target' at " + path.string() +
                      ":" + std::to_string(line_no));
    }
    doc.pairs.push_back(
        SentencePair{split_words(fields[0]), split_words(fields[1])});
  }
  if (doc.pairs.empty()) {
    throw DataError("document has no sentence pairs: " + path.string());
  }
  return doc;
}

void save_boundaries(const std::vector<std::size_t>& ends,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write boundary file: " + path.string());
  }
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (i > 0) out << ' ';
    out << ends[i];
  }
  out << '\n';
}

std::vector<std::size_t> load_boundaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read boundary file: " + path.string());
  }
  std::vector<std::size_t> ends;
  std::string tok;
  while (in >> tok) {
    ends.push_back(parse_count(tok, path.string()));
  }
  return ends;
}

void save_samples(const std::vector<TrainingSample>& samples,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write sample file: " + path.string());
  }
  for (const TrainingSample& s : samples) {
    out << join_words(s.source) << '\t' << join_words(s.target) << '\t'
        << s.history_source_tokens << '\t' << s.history_target_tokens << '\n';
  }
}

std::vector<TrainingSample> load_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read sample file: " + path.string());
  }
  std::vector<TrainingSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 4) {
      throw DataError("expected 4 tab-separated columns at " + path.string() +
                      ":" + std::to_string(line_no));
    }
    const std::string where = path.string() + ":" + std::to_string(line_no);
    TrainingSample s;
    s.source = split_words(fields[0]);
    s.target = split_words(fields[1]);
    s.history_source_tokens = parse_count(fields[2], where);
    s.history_target_tokens = parse_count(fields[3], where);
    if (s.history_source_tokens > s.source.size() ||
        s.history_target_tokens > s.target.size()) {
      throw DataError("history counts exceed token counts at " + where);
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<Document> load_documents(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    docs.push_back(load_document(file));
  }
  return docs;
}

}  // namespace streammt
