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

#include "streammt/evaluation.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "streammt/errors.hpp"

namespace streammt {
namespace {

namespace fs = std::filesystem;

// Plain word-level Levenshtein distance, written independently of the
// segmentation DP it cross-checks.
std::size_t edit_distance(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j - 1] + sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Brute force over every monotone segmentation of hyp into |refs| spans.
std::size_t best_split_cost(const std::vector<std::string>& hyp,
                            const std::vector<std::vector<std::string>>& refs,
                            std::size_t seg, std::size_t start) {
  if (seg + 1 == refs.size()) {
    const std::vector<std::string> tail(hyp.begin() +
                                            static_cast<std::ptrdiff_t>(start),
                                        hyp.end());
    return edit_distance(tail, refs[seg]);
  }
  std::size_t best = static_cast<std::size_t>(-1);
  for (std::size_t end = start; end <= hyp.size(); ++end) {
    const std::vector<std::string> span(
        hyp.begin() + static_cast<std::ptrdiff_t>(start),
        hyp.begin() + static_cast<std::ptrdiff_t>(end));
    const std::size_t here = edit_distance(span, refs[seg]);
    const std::size_t rest = best_split_cost(hyp, refs, seg + 1, end);
    best = std::min(best, here + rest);
  }
  return best;
}

SessionTrace trace_with_delays(const std::vector<std::size_t>& delays,
                               std::size_t source_words) {
  SessionTrace trace;
  for (std::size_t j = 0; j < source_words; ++j) {
    trace.events.push_back(TraceEvent::read(j, "s" + std::to_string(j)));
  }
  for (std::size_t i = 0; i < delays.size(); ++i) {
    trace.events.push_back(
        TraceEvent::write(i, "t" + std::to_string(i), delays[i]));
  }
  trace.reindex();
  return trace;
}

AlignedHypothesis single_span(const std::vector<std::string>& hyp) {
  AlignedHypothesis aligned;
  aligned.segments = {hyp};
  aligned.boundaries = {hyp.size()};
  return aligned;
}

}  // namespace

TEST_CASE("re-alignment matches an exhaustive split search") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> pick_refs(1, 3);
  std::uniform_int_distribution<std::size_t> pick_ref_len(0, 4);
  std::uniform_int_distribution<std::size_t> pick_hyp_len(0, 12);
  const std::vector<std::string> vocab{"a", "b", "c"};
  std::uniform_int_distribution<std::size_t> pick_word(0, vocab.size() - 1);

  for (int it = 0; it < 600; ++it) {
    std::vector<std::vector<std::string>> refs(pick_refs(rng));
    for (auto& seg : refs) {
      const std::size_t len = pick_ref_len(rng);
      for (std::size_t i = 0; i < len; ++i) {
        seg.push_back(vocab[pick_word(rng)]);
      }
    }
    std::vector<std::string> hyp;
    const std::size_t hyp_len = pick_hyp_len(rng);
    for (std::size_t i = 0; i < hyp_len; ++i) {
      hyp.push_back(vocab[pick_word(rng)]);
    }

    const AlignedHypothesis aligned = realign(hyp, refs);

    // Structural invariants: spans are monotone, disjoint and exhaustive.
    REQUIRE(aligned.segments.size() == refs.size());
    REQUIRE(aligned.boundaries.size() == refs.size());
    std::size_t covered = 0;
    for (std::size_t s = 0; s < refs.size(); ++s) {
      covered += aligned.segments[s].size();
      CHECK(aligned.boundaries[s] == covered);
    }
    CHECK(covered == hyp.size());
    CHECK(aligned.total_tokens() == hyp.size());

    // The reported segmentation achieves the reported cost …
    std::size_t rescored = 0;
    for (std::size_t s = 0; s < refs.size(); ++s) {
      rescored += edit_distance(aligned.segments[s], refs[s]);
    }
    CHECK(rescored == aligned.total_edit_distance);

    // … and the cost is globally minimal.
    CHECK(aligned.total_edit_distance == best_split_cost(hyp, refs, 0, 0));
  }
}

TEST_CASE("re-alignment edge cases") {
  // Empty hypothesis: all spans empty, distance = total reference length.
  const AlignedHypothesis empty =
      realign({}, {{"a", "b"}, {"c", "d", "e"}});
  CHECK(empty.total_edit_distance == 5);
  CHECK(empty.segments == std::vector<std::vector<std::string>>{{}, {}});
  CHECK(empty.boundaries == std::vector<std::size_t>{0, 0});

  // Exact hypothesis: zero distance, spans reproduce the references.
  const AlignedHypothesis exact =
      realign({"a", "b", "c"}, {{"a"}, {"b", "c"}});
  CHECK(exact.total_edit_distance == 0);
  CHECK(exact.segments ==
        std::vector<std::vector<std::string>>{{"a"}, {"b", "c"}});

  CHECK_THROWS_AS(realign({"a"}, {}), DataError);
}

TEST_CASE("identical corpora score exactly 100") {
  const std::vector<std::vector<std::string>> corpus{
      {"a", "b", "c", "d", "e"}, {"f", "g"}, {"h"}};
  const QualityReport report = bleu(corpus, corpus);
  CHECK(report.bleu == 100.0);
  CHECK(report.brevity_penalty == 1.0);
  for (double p : report.ngram_precisions) CHECK(p == 1.0);
}

TEST_CASE("the brevity penalty matches its closed form") {
  const QualityReport report =
      bleu({{"a", "b", "c", "d"}}, {{"a", "b", "c", "d", "e"}});
  for (double p : report.ngram_precisions) CHECK(p == 1.0);
  CHECK(report.brevity_penalty ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
  CHECK(report.bleu ==
        doctest::Approx(77.88007830714049).epsilon(1e-12));

  // No penalty for longer hypotheses.
  const QualityReport longer =
      bleu({{"a", "b", "c", "d", "x"}}, {{"a", "b", "c", "d"}});
  CHECK(longer.brevity_penalty == 1.0);
}

TEST_CASE("mixed precisions multiply into the geometric mean") {
  const QualityReport report = bleu({{"a", "b", "c"}}, {{"a", "b", "d"}});
  CHECK(report.ngram_precisions[0] == doctest::Approx(2.0 / 3.0));
  CHECK(report.ngram_precisions[1] == doctest::Approx(0.5));
  CHECK(report.ngram_precisions[2] == doctest::Approx(1e-9));
  CHECK(report.ngram_precisions[3] == 1.0);  // no 4-grams: neutral
  const double expected =
      100.0 *
      std::exp((std::log(2.0 / 3.0) + std::log(0.5) + std::log(1e-9)) / 4.0);
  CHECK(report.bleu == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("disjoint corpora fall back to the epsilon floor") {
  const QualityReport report =
      bleu({{"x", "y", "z", "q", "w"}}, {{"a", "b", "c", "d", "e"}});
  const double expected =
      100.0 * std::exp((std::log(1e-9 / 5) + std::log(1e-9 / 4) +
                        std::log(1e-9 / 3) + std::log(1e-9 / 2)) /
                       4.0);
  CHECK(report.bleu == doctest::Approx(expected).epsilon(1e-9));
  CHECK(report.bleu < 1e-3);
}

TEST_CASE("an empty hypothesis scores zero") {
  const QualityReport report = bleu({{}, {}}, {{"a"}, {"b"}});
  CHECK(report.bleu == 0.0);
  CHECK(report.brevity_penalty == 0.0);
}

TEST_CASE("malformed corpora are rejected") {
  CHECK_THROWS_AS(bleu({{"a"}}, {{"a"}, {"b"}}), ConfigError);
  CHECK_THROWS_AS(bleu({}, {}), ConfigError);
  CHECK_THROWS_AS(bleu({{}, {}}, {{}, {}}), ConfigError);
}

TEST_CASE("average lagging reproduces hand-computed schedules") {
  // Unit ratio, wait-2 schedule over 4 words: AL = k.
  const SessionTrace wait2 = trace_with_delays({2, 3, 4, 4}, 4);
  CHECK(average_lagging(wait2, single_span(wait2.hypothesis)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // r = 2 (six target words over three source words).
  const SessionTrace fertile = trace_with_delays({1, 2, 2, 3, 3, 3}, 3);
  // tau = 4 (first delay equal to J); sum = 1 + 1.5 + 1 + 1.5 = 5.
  CHECK(average_lagging(fertile, single_span(fertile.hypothesis)) ==
        doctest::Approx(1.25).epsilon(1e-12));

  // Everything written after the final read: AL = J.
  const SessionTrace batch = trace_with_delays({3, 3, 3}, 3);
  CHECK(average_lagging(batch, single_span(batch.hypothesis)) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("average lagging edge cases") {
  // An empty hypothesis is maximally late: AL = J.
  const SessionTrace silent = trace_with_delays({}, 5);
  CHECK(average_lagging(silent, single_span({})) == 5.0);

  // Token-count mismatch between trace and alignment.
  const SessionTrace trace = trace_with_delays({1, 2}, 2);
  CHECK_THROWS_AS(average_lagging(trace, single_span({"a", "b", "c"})),
                  TraceMismatchError);

  // A trace that never read anything cannot be scored.
  SessionTrace unread;
  unread.reindex();
  CHECK_THROWS_AS(average_lagging(unread, single_span({})),
                  TraceMismatchError);
}

TEST_CASE("bootstrap resampling is deterministic in the seed") {
  const std::vector<std::vector<std::string>> refs{
      {"a", "b", "c"}, {"d", "e", "f"}, {"g", "h"}};
  const std::vector<std::vector<std::string>> sys_a{
      {"a", "b", "c"}, {"d", "e", "x"}, {"g", "h"}};
  const std::vector<std::vector<std::string>> sys_b{
      {"a", "x", "y"}, {"d", "e", "f"}, {"g", "x"}};

  const double p1 = bootstrap_significance(sys_a, sys_b, refs, 200, 13);
  const double p2 = bootstrap_significance(sys_a, sys_b, refs, 200, 13);
  CHECK(p1 == p2);
  CHECK(p1 >= 0.0);
  CHECK(p1 <= 1.0);

  const auto plan1 = bootstrap_indices(3, 50, 99);
  const auto plan2 = bootstrap_indices(3, 50, 99);
  CHECK(plan1 == plan2);
  for (const auto& row : plan1) {
    REQUIRE(row.size() == 3);
    for (std::size_t idx : row) CHECK(idx < 3);
  }
}

TEST_CASE("comparing a system to itself is never significant") {
  const std::vector<std::vector<std::string>> refs{{"a", "b"}, {"c", "d"}};
  const std::vector<std::vector<std::string>> sys{{"a", "x"}, {"c", "d"}};
  CHECK(bootstrap_significance(sys, sys, refs, 100, 7) == 1.0);
}

TEST_CASE("hand-built resample plans count sign flips") {
  const std::vector<std::vector<std::string>> refs{
      {"a", "b", "c"}, {"d", "e", "f"}};
  // A is slightly wrong on segment 1; B is completely wrong on segment 0.
  const std::vector<std::vector<std::string>> sys_a{
      {"a", "b", "c"}, {"d", "e", "x"}};
  const std::vector<std::vector<std::string>> sys_b{
      {"x", "y", "z"}, {"d", "e", "f"}};

  // Resampling only segment 0 favors A (no flip) …
  CHECK(bootstrap_significance_with_indices(sys_a, sys_b, refs, {{0, 0}}) ==
        0.0);
  // … only segment 1 favors B (flip) …
  CHECK(bootstrap_significance_with_indices(sys_a, sys_b, refs, {{1, 1}}) ==
        1.0);
  // … and one of each splits the difference.
  CHECK(bootstrap_significance_with_indices(sys_a, sys_b, refs,
                                            {{0, 0}, {1, 1}}) == 0.5);
}

TEST_CASE("bootstrap input validation") {
  const std::vector<std::vector<std::string>> refs{{"a"}, {"b"}};
  const std::vector<std::vector<std::string>> sys{{"a"}, {"b"}};
  const std::vector<std::vector<std::string>> worse{{"x"}, {"b"}};
  CHECK_THROWS_AS(bootstrap_significance(sys, sys, {{"a"}}, 10, 1),
                  DataError);
  CHECK_THROWS_AS(bootstrap_significance({{"a"}}, sys, refs, 10, 1),
                  DataError);
  CHECK_THROWS_AS(bootstrap_significance(sys, sys, refs, 0, 1), ConfigError);
  // A zero full-corpus delta short-circuits before the plan is validated,
  // so the broken-plan probes need systems that actually differ.
  CHECK(bootstrap_significance_with_indices(sys, sys, refs, {}) == 1.0);
  CHECK_THROWS_AS(
      bootstrap_significance_with_indices(sys, worse, refs, {}), DataError);
  CHECK_THROWS_AS(
      bootstrap_significance_with_indices(sys, worse, refs, {{0, 5}}),
      DataError);
}

TEST_CASE("boundary accuracy is position-wise over the longer list") {
  CHECK(boundary_accuracy({}, {}) == 1.0);
  CHECK(boundary_accuracy({3, 7}, {3, 7}) == 1.0);
  CHECK(boundary_accuracy({3, 8}, {3, 7}) == 0.5);
  CHECK(boundary_accuracy({3}, {3, 7}) == 0.5);
  CHECK(boundary_accuracy({3, 7, 9}, {3, 7}) == doctest::Approx(2.0 / 3.0));
  CHECK(boundary_accuracy({7, 3}, {3, 7}) == 0.0);
  CHECK(boundary_accuracy({}, {4}) == 0.0);
}

TEST_CASE("history replay reports the high-water marks") {
  SessionTrace trace;
  trace.events = {
      TraceEvent::commit(4, 4, 4, 4),
      TraceEvent::commit(4, 4, 4, 8),
      TraceEvent::truncate(1, 4, 4),
      TraceEvent::commit(4, 5, 6, 12),
  };
  // The commit directly followed by a truncation settles only afterwards,
  // so the transient 8/8 total never counts; the final commit leaves 9/10.
  CHECK(max_history_words(trace) ==
        std::pair<std::size_t, std::size_t>{9, 10});

  SessionTrace plain;
  plain.events = {
      TraceEvent::commit(2, 3, 4, 3),
      TraceEvent::commit(2, 5, 5, 8),
  };
  CHECK(max_history_words(plain) ==
        std::pair<std::size_t, std::size_t>{8, 9});

  CHECK(max_history_words(SessionTrace{}) ==
        std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("history replay rejects inconsistent truncations") {
  SessionTrace overdrawn;
  overdrawn.events = {TraceEvent::truncate(1, 0, 0)};
  CHECK_THROWS_AS(max_history_words(overdrawn), TraceMismatchError);

  SessionTrace lying;
  lying.events = {
      TraceEvent::commit(4, 4, 4, 4),
      TraceEvent::commit(4, 4, 4, 8),
      TraceEvent::truncate(1, 3, 4),  // replay says 4/4
  };
  CHECK_THROWS_AS(max_history_words(lying), TraceMismatchError);
}

TEST_CASE("latency-quality curves are sorted by lagging") {
  const fs::path path =
      fs::temp_directory_path() /
      ("streammt_curve_" + std::to_string(std::random_device{}()) + ".csv");
  emit_curve(
      {
          CurvePoint{"naive", 2, 3.5, 80.0},
          CurvePoint{"segfree", 1, 1.25, 90.5},
      },
      path);
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() ==
        "system,k,AL,BLEU\n"
        "segfree,1,1.250000,90.500000\n"
        "naive,2,3.500000,80.000000\n");
  fs::remove(path);

  CHECK_THROWS_AS(emit_curve({}, "/nonexistent/dir/curve.csv"), IoError);
}

}  // namespace streammt
