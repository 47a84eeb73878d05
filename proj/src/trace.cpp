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

#include "streammt/trace.hpp"

#include <fstream>
#include <utility>

#include <json.hpp>

#include "streammt/errors.hpp"

namespace streammt {

using nlohmann::json;

TraceEvent TraceEvent::read(std::size_t i, std::string w) {
  TraceEvent e;
  e.kind = Kind::Read;
  e.index = i;
  e.word = std::move(w);
  return e;
}

TraceEvent TraceEvent::write(std::size_t i, std::string w, std::size_t g) {
  TraceEvent e;
  e.kind = Kind::Write;
  e.index = i;
  e.word = std::move(w);
  e.g = g;
  return e;
}

TraceEvent TraceEvent::sep(std::size_t i) {
  TraceEvent e;
  e.kind = Kind::Sep;
  e.index = i;
  return e;
}

TraceEvent TraceEvent::commit(std::size_t a_hat, std::size_t src_words,
                              std::size_t tgt_words, std::size_t src_end) {
  TraceEvent e;
  e.kind = Kind::Commit;
  e.a_hat = a_hat;
  e.src_words = src_words;
  e.tgt_words = tgt_words;
  e.src_end = src_end;
  return e;
}

TraceEvent TraceEvent::truncate(std::size_t removed, std::size_t src_words,
                                std::size_t tgt_words) {
  TraceEvent e;
  e.kind = Kind::Truncate;
  e.removed = removed;
  e.src_words = src_words;
  e.tgt_words = tgt_words;
  return e;
}

std::string TraceEvent::to_json_line() const {
  json j;
  switch (kind) {
    case Kind::Read:
      j = {{"type", "READ"}, {"i", index}, {"w", word}};
      break;
    case Kind::Write:
      j = {{"type", "WRITE"}, {"i", index}, {"w", word}, {"g", g}};
      break;
    case Kind::Sep:
      j = {{"type", "SEP"}, {"i", index}};
      break;
    case Kind::Commit:
      j = {{"type", "COMMIT"},
           {"a_hat", a_hat},
           {"src_words", src_words},
           {"tgt_words", tgt_words},
           {"src_end", src_end}};
      break;
    case Kind::Truncate:
      j = {{"type", "TRUNCATE"},
           {"removed", removed},
           {"src_words", src_words},
           {"tgt_words", tgt_words}};
      break;
  }
  return j.dump();
}

TraceEvent TraceEvent::from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad trace line: ") + e.what());
  }
  const std::string type = j.value("type", "");
  if (type == "READ") {
    return read(j.at("i").get<std::size_t>(), j.at("w").get<std::string>());
  }
  if (type == "WRITE") {
    return write(j.at("i").get<std::size_t>(), j.at("w").get<std::string>(),
                 j.at("g").get<std::size_t>());
  }
  if (type == "SEP") {
    return sep(j.at("i").get<std::size_t>());
  }
  if (type == "COMMIT") {
    return commit(j.at("a_hat").get<std::size_t>(),
                  j.at("src_words").get<std::size_t>(),
                  j.at("tgt_words").get<std::size_t>(),
                  j.at("src_end").get<std::size_t>());
  }
  if (type == "TRUNCATE") {
    return truncate(j.at("removed").get<std::size_t>(),
                    j.at("src_words").get<std::size_t>(),
                    j.at("tgt_words").get<std::size_t>());
  }
  throw DataError("unknown trace event type: " + type);
}

void SessionTrace::reindex() {
  hypothesis.clear();
  delays.clear();
  commit_ends.clear();
  source_tokens_read = 0;
  for (const TraceEvent& e : events) {
    switch (e.kind) {
      case TraceEvent::Kind::Read:
        ++source_tokens_read;
        break;
      case TraceEvent::Kind::Write:
        hypothesis.push_back(e.word);
        delays.push_back(e.g);
        break;
      case TraceEvent::Kind::Commit:
        commit_ends.push_back(e.src_end);
        break;
      default:
        break;
    }
  }
}

void save_trace(const SessionTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write trace file: " + path.string());
  }
  for (const TraceEvent& e : trace.events) {
    out << e.to_json_line() << '\n';
  }
  if (!out) {
    throw IoError("failed while writing trace file: " + path.string());
  }
}

SessionTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read trace file: " + path.string());
  }
  SessionTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    trace.events.push_back(TraceEvent::from_json_line(line));
  }
  trace.reindex();
  return trace;
}

}  // namespace streammt
