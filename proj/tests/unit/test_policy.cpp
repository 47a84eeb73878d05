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

#include "streammt/policy.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "streammt/errors.hpp"
#include "streammt/segmenter.hpp"
#include "streammt/stream.hpp"
#include "streammt/synthetic.hpp"
#include "streammt/toy_decoder.hpp"

namespace streammt {
namespace {

// Places boundaries at known sentence ends; the reference point the trained
// mechanism is supposed to approximate.
class GoldBoundaryMechanism : public BoundaryMechanism {
 public:
  explicit GoldBoundaryMechanism(std::vector<std::size_t> ends)
      : ends_(std::move(ends)) {}

  std::size_t propose_boundary(const BoundaryQuery& query) const override {
    for (std::size_t end : ends_) {
      if (end > query.consumed_source_words) {
        return std::min(end - query.consumed_source_words,
                        query.chunk_source.size());
      }
    }
    return query.chunk_source.size();
  }

 private:
  std::vector<std::size_t> ends_;
};

class FixedMechanism : public BoundaryMechanism {
 public:
  explicit FixedMechanism(std::size_t a) : a_(a) {}
  std::size_t propose_boundary(const BoundaryQuery&) const override {
    return a_;
  }

 private:
  std::size_t a_;
};

// Deterministic pseudo-random but valid boundary choices.
class ScrambledMechanism : public BoundaryMechanism {
 public:
  std::size_t propose_boundary(const BoundaryQuery& query) const override {
    const std::size_t n = query.chunk_source.size();
    if (n == 0) return 0;
    std::size_t h = query.total_target_words * 2654435761u +
                    query.consumed_source_words * 40503u + n;
    return h % (n + 1);
  }
};

// Scores e at the last prefix position and 1 elsewhere.
class LastPositionFeature : public BoundaryFeature {
 public:
  std::string name() const override { return "last_position"; }
  std::vector<double> scores(
      const std::vector<std::string>& chunk,
      const std::vector<std::string>&) const override {
    std::vector<double> h(chunk.size(), 1.0);
    if (!h.empty()) h.back() = std::exp(1.0);
    return h;
  }
};

BoundaryQuery make_query(std::size_t chunk_len, std::size_t segment_len,
                         std::size_t consumed, std::size_t total_target) {
  BoundaryQuery q;
  for (std::size_t i = 0; i < chunk_len; ++i) {
    q.chunk_source.push_back("s" + std::to_string(i));
  }
  for (std::size_t i = 0; i < segment_len; ++i) {
    q.segment.push_back("T" + std::to_string(i));
  }
  q.consumed_source_words = consumed;
  q.total_target_words = total_target;
  return q;
}

}  // namespace

TEST_CASE("wait-k reads until the source leads by k") {
  const WaitKPolicy policy(3);
  CHECK(policy.k() == 3);
  CHECK(policy.should_read(0, 0, true));
  CHECK(policy.should_read(2, 0, true));
  CHECK(!policy.should_read(3, 0, true));
  CHECK(policy.should_read(3, 1, true));
  CHECK(!policy.should_read(4, 1, true));
  CHECK(!policy.should_read(2, 0, false));

  const WaitKPolicy tight(1);
  CHECK(tight.should_read(0, 0, true));
  CHECK(!tight.should_read(1, 0, true));

  CHECK_THROWS_AS(WaitKPolicy(0), ConfigError);
}

TEST_CASE("the length-ratio boundary guess floors and clamps") {
  CHECK(naive_boundary(4, 2.0, 0, 10) == 2);
  CHECK(naive_boundary(3, 2.0, 1, 10) == 0);
  CHECK(naive_boundary(100, 1.0, 0, 5) == 5);
  CHECK(naive_boundary(2, 2.0, 5, 10) == 0);  // negative span clamps to 0
  CHECK(naive_boundary(0, 1.5, 0, 4) == 0);
  CHECK(naive_boundary(7, 1.5, 0, 10) == 4);  // floor(7 / 1.5) = 4
  CHECK_THROWS_AS(naive_boundary(3, 0.0, 0, 5), ConfigError);
  CHECK_THROWS_AS(naive_boundary(3, -1.0, 0, 5), ConfigError);
}

TEST_CASE("the naive mechanism tracks totals or the closing segment") {
  NaiveOffsetConfig cfg;
  cfg.ratio = 2.0;
  const NaiveMechanism by_total(cfg);
  // floor(8 / 2) - 3 = 1
  CHECK(by_total.propose_boundary(make_query(6, 2, 3, 8)) == 1);

  cfg.per_segment = true;
  const NaiveMechanism by_segment(cfg);
  // floor(2 / 2) = 1, consumed ignored
  CHECK(by_segment.propose_boundary(make_query(6, 2, 3, 8)) == 1);
  CHECK(by_segment.propose_boundary(make_query(6, 5, 3, 8)) == 2);

  cfg.ratio = 0.0;
  CHECK_THROWS_AS(NaiveMechanism{cfg}, ConfigError);
}

TEST_CASE("the log-linear mechanism takes the feature argmax") {
  FeatureSet features;
  features.push_back(std::make_shared<LastPositionFeature>());
  const LogLinearMechanism mechanism(features, FeatureWeights{{1.0}});
  CHECK(mechanism.propose_boundary(make_query(4, 2, 0, 2)) == 4);
  CHECK(mechanism.propose_boundary(make_query(1, 1, 0, 1)) == 1);

  // A negative weight inverts the preference; ties resolve to the largest
  // position, so position 3 of the flat remainder wins.
  const LogLinearMechanism inverted(features, FeatureWeights{{-1.0}});
  CHECK(inverted.propose_boundary(make_query(4, 2, 0, 2)) == 3);

  CHECK_THROWS_AS(LogLinearMechanism(FeatureSet{}, FeatureWeights{{1.0}}),
                  ConfigError);
  CHECK_THROWS_AS(LogLinearMechanism(features, FeatureWeights{{1.0, 2.0}}),
                  ConfigError);
}

TEST_CASE("the marker mechanism consumes through the first marker") {
  const SourceSepMechanism mechanism;
  BoundaryQuery q = make_query(3, 1, 0, 1);
  CHECK(mechanism.propose_boundary(q) == 3);  // no marker: whole chunk
  q.chunk_source = {"a", std::string(kSep), "b"};
  CHECK(mechanism.propose_boundary(q) == 2);
  q.chunk_source = {std::string(kSep), "a"};
  CHECK(mechanism.propose_boundary(q) == 1);
}

TEST_CASE("unit-fertility sessions follow the wait-k schedule exactly") {
  GrammarConfig grammar;
  grammar.fertility_weights = {{1, 1.0}};
  const SyntheticCorpus corpus = generate_synthetic_corpus(21, 1, 6, grammar);
  const Document& doc = corpus.documents[0];
  const std::vector<std::size_t>& ends = corpus.boundaries[0];

  std::vector<std::string> source_words;
  std::vector<std::string> reference;
  for (const SentencePair& pair : doc.pairs) {
    source_words.insert(source_words.end(), pair.source.begin(),
                        pair.source.end());
    reference.insert(reference.end(), pair.target.begin(), pair.target.end());
  }
  const std::size_t J = source_words.size();

  const ToyDecoder decoder(corpus.lexicon);
  const GoldBoundaryMechanism mechanism(ends);
  for (std::size_t k : {1, 2, 3, 5}) {
    SessionOptions options;
    options.wait_k = k;
    options.beam = 2;
    const SessionTrace trace =
        run_segfree_session(decoder, mechanism, source_words, options);

    CHECK(trace.hypothesis == reference);
    CHECK(trace.commit_ends == ends);
    CHECK(trace.source_tokens_read == J);
    REQUIRE(trace.delays.size() == reference.size());
    for (std::size_t t = 0; t < trace.delays.size(); ++t) {
      CHECK(trace.delays[t] == std::min(t + k, J));
    }
  }
}

TEST_CASE("sessions terminate under arbitrary valid boundary choices") {
  GrammarConfig grammar;
  grammar.fertility_weights = {{1, 0.5}, {2, 0.5}};
  const SyntheticCorpus corpus = generate_synthetic_corpus(77, 4, 5, grammar);
  const ToyDecoder decoder(corpus.lexicon);
  const ScrambledMechanism scrambled;
  const FixedMechanism always_zero(0);

  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    std::vector<std::string> source_words;
    for (const SentencePair& pair : corpus.documents[d].pairs) {
      source_words.insert(source_words.end(), pair.source.begin(),
                          pair.source.end());
    }
    SessionOptions options;
    options.wait_k = 2;
    options.beam = 2;
    const SessionTrace scrambled_trace =
        run_segfree_session(decoder, scrambled, source_words, options);
    CHECK(scrambled_trace.source_tokens_read == source_words.size());
    const SessionTrace stuck_trace =
        run_segfree_session(decoder, always_zero, source_words, options);
    CHECK(stuck_trace.source_tokens_read == source_words.size());
  }
}

TEST_CASE("write delays never exceed the source words read so far") {
  GrammarConfig grammar;
  grammar.fertility_weights = {{1, 0.4}, {2, 0.6}};
  const SyntheticCorpus corpus = generate_synthetic_corpus(5, 1, 8, grammar);
  std::vector<std::string> source_words;
  for (const SentencePair& pair : corpus.documents[0].pairs) {
    source_words.insert(source_words.end(), pair.source.begin(),
                        pair.source.end());
  }
  const ToyDecoder decoder(corpus.lexicon);
  const GoldBoundaryMechanism mechanism(corpus.boundaries[0]);
  SessionOptions options;
  options.wait_k = 3;
  const SessionTrace trace =
      run_segfree_session(decoder, mechanism, source_words, options);

  std::size_t reads_so_far = 0;
  std::size_t writes_seen = 0;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == TraceEvent::Kind::Read) {
      ++reads_so_far;
    } else if (e.kind == TraceEvent::Kind::Write) {
      CHECK(e.g == reads_so_far);
      CHECK(e.g <= source_words.size());
      ++writes_seen;
    }
  }
  CHECK(writes_seen == trace.hypothesis.size());
}

TEST_CASE("history truncation keeps both sides within the cap") {
  GrammarConfig grammar;
  grammar.fertility_weights = {{1, 1.0}};
  grammar.min_sentence_len = 4;
  grammar.max_sentence_len = 4;
  const SyntheticCorpus corpus = generate_synthetic_corpus(9, 1, 6, grammar);
  std::vector<std::string> source_words;
  for (const SentencePair& pair : corpus.documents[0].pairs) {
    source_words.insert(source_words.end(), pair.source.begin(),
                        pair.source.end());
  }
  const ToyDecoder decoder(corpus.lexicon);
  const GoldBoundaryMechanism mechanism(corpus.boundaries[0]);
  SessionOptions options;
  options.wait_k = 2;
  options.history_cap = 5;
  const SessionTrace trace =
      run_segfree_session(decoder, mechanism, source_words, options);

  bool saw_truncate = false;
  for (const TraceEvent& e : trace.events) {
    if (e.kind == TraceEvent::Kind::Truncate) {
      saw_truncate = true;
      CHECK(e.src_words <= 5);
      CHECK(e.tgt_words <= 5);
      CHECK(e.removed >= 1);
    }
  }
  CHECK(saw_truncate);
}

TEST_CASE("segmented sessions let markers ride with the previous word") {
  ToyLexicon lex;
  lex.entries["w1"] = {"W1"};
  lex.entries["w2"] = {"W2"};
  lex.entries["w3"] = {"W3"};
  const ToyDecoder decoder(lex.segmented_view());

  const std::vector<std::string> source_words{
      "w1", "w2", std::string(kSep), "w3", std::string(kSep)};
  SessionOptions options;
  options.wait_k = 1;
  options.beam = 2;
  const SessionTrace trace =
      run_segmented_session(decoder, source_words, options);

  CHECK(trace.source_tokens_read == 3);  // markers read no words
  for (const TraceEvent& e : trace.events) {
    if (e.kind == TraceEvent::Kind::Read) {
      CHECK(!is_sep(e.word));
    }
  }
  CHECK(trace.hypothesis == std::vector<std::string>{"W1", "W2", "W3"});
  CHECK(trace.commit_ends == std::vector<std::size_t>{2, 3});
}

TEST_CASE("malformed streams are rejected up front") {
  ToyLexicon lex;
  lex.entries["a"] = {"A"};
  lex.terminators = {"a"};
  const ToyDecoder decoder(lex);
  const FixedMechanism mechanism(0);
  SessionOptions options;

  CHECK_THROWS_AS(run_segfree_session(
                      decoder, mechanism, {"a", std::string(kSep)}, options),
                  DataError);
  CHECK_THROWS_AS(run_segfree_session(decoder, mechanism, {"a", ""}, options),
                  DataError);
  CHECK_THROWS_AS(run_segmented_session(
                      decoder, {std::string(kSep), "a"}, options),
                  DataError);

  SessionOptions bad;
  bad.wait_k = 0;
  CHECK_THROWS_AS(run_segfree_session(decoder, mechanism, {"a"}, bad),
                  ConfigError);
}

TEST_CASE("out-of-range boundary proposals are a domain error") {
  ToyLexicon lex;
  lex.entries["a"] = {"A"};
  lex.entries["t"] = {"T"};
  lex.terminators = {"t"};
  const ToyDecoder decoder(lex);
  const FixedMechanism overshoot(99);
  SessionOptions options;
  options.wait_k = 1;
  CHECK_THROWS_AS(
      run_segfree_session(decoder, overshoot, {"a", "t"}, options),
      BoundaryDomainError);
}

}  // namespace streammt
