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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "streammt/errors.hpp"

namespace streammt {

std::size_t AlignedHypothesis::total_tokens() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.size();
  return n;
}

AlignedHypothesis realign(const std::vector<std::string>& hyp,
                          const std::vector<std::vector<std::string>>& refs) {
  if (refs.empty()) {
    throw DataError("re-alignment needs at least one reference segment");
  }
  const std::size_t M = hyp.size();
  const std::size_t S = refs.size();
  constexpr std::size_t kInf = static_cast<std::size_t>(-1) / 2;

  // D[i][j]: minimal cost of covering hyp[0..j) with the first i reference
  // segments. starts[i-1][j]: where segment i begins on that optimal path,
  // ties resolved toward the smallest start.
  std::vector<std::vector<std::size_t>> D(S + 1,
                                          std::vector<std::size_t>(M + 1, kInf));
  std::vector<std::vector<std::size_t>> starts(
      S, std::vector<std::size_t>(M + 1, 0));
  D[0][0] = 0;
  for (std::size_t j = 1; j <= M; ++j) D[0][j] = kInf;

  for (std::size_t i = 1; i <= S; ++i) {
    const std::vector<std::string>& ref = refs[i - 1];
    const std::size_t m = ref.size();
    // dp[j][t]: best cost of D[i-1][j'] plus editing hyp[j'..j) into
    // ref[0..t), minimized over the segment start j'. start[j][t] tracks j'.
    std::vector<std::vector<std::size_t>> dp(
        M + 1, std::vector<std::size_t>(m + 1, kInf));
    std::vector<std::vector<std::size_t>> start(
        M + 1, std::vector<std::size_t>(m + 1, 0));

    dp[0][0] = D[i - 1][0];
    start[0][0] = 0;
    for (std::size_t j = 1; j <= M; ++j) {
      // Open the segment here, or carry it on and treat hyp[j-1] as an
      // insertion.
      std::size_t best = D[i - 1][j];
      std::size_t from = j;
      if (dp[j - 1][0] != kInf && dp[j - 1][0] + 1 <= best) {
        // <= prefers the earlier start on ties.
        if (dp[j - 1][0] + 1 < best || start[j - 1][0] < from) {
          best = dp[j - 1][0] + 1;
          from = start[j - 1][0];
        }
      }
      dp[j][0] = best;
      start[j][0] = from;
    }
    for (std::size_t t = 1; t <= m; ++t) {
      if (dp[0][t - 1] != kInf) {
        dp[0][t] = dp[0][t - 1] + 1;
        start[0][t] = 0;
      }
      for (std::size_t j = 1; j <= M; ++j) {
        std::size_t best = kInf;
        std::size_t from = 0;
        auto consider = [&](std::size_t cost, std::size_t origin) {
          if (cost < best || (cost == best && origin < from)) {
            best = cost;
            from = origin;
          }
        };
        if (dp[j - 1][t - 1] != kInf) {
          const std::size_t sub = hyp[j - 1] == ref[t - 1] ? 0 : 1;
          consider(dp[j - 1][t - 1] + sub, start[j - 1][t - 1]);
        }
        if (dp[j][t - 1] != kInf) consider(dp[j][t - 1] + 1, start[j][t - 1]);
        if (dp[j - 1][t] != kInf) consider(dp[j - 1][t] + 1, start[j - 1][t]);
        dp[j][t] = best;
        start[j][t] = from;
      }
    }
    for (std::size_t j = 0; j <= M; ++j) {
      D[i][j] = dp[j][m];
      starts[i - 1][j] = start[j][m];
    }
  }

  AlignedHypothesis aligned;
  aligned.total_edit_distance = D[S][M];
  std::vector<std::size_t> bounds(S + 1, 0);
  bounds[S] = M;
  for (std::size_t i = S; i >= 1; --i) {
    bounds[i - 1] = starts[i - 1][bounds[i]];
  }
  aligned.segments.reserve(S);
  aligned.boundaries.reserve(S);
  for (std::size_t i = 1; i <= S; ++i) {
    aligned.segments.emplace_back(
        hyp.begin() + static_cast<std::ptrdiff_t>(bounds[i - 1]),
        hyp.begin() + static_cast<std::ptrdiff_t>(bounds[i]));
    aligned.boundaries.push_back(bounds[i]);
  }
  return aligned;
}

namespace {

// n-grams keyed by joining tokens with an unprintable separator.
std::unordered_map<std::string, std::size_t> ngram_counts(
    const std::vector<std::string>& tokens, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

QualityReport bleu(const std::vector<std::vector<std::string>>& hyp_segments,
                   const std::vector<std::vector<std::string>>& ref_segments) {
  if (hyp_segments.size() != ref_segments.size()) {
    throw ConfigError("hypothesis and reference segment counts differ");
  }
  std::size_t ref_len = 0;
  for (const auto& seg : ref_segments) ref_len += seg.size();
  if (ref_segments.empty() || ref_len == 0) {
    throw ConfigError("reference corpus is empty");
  }
  std::size_t hyp_len = 0;
  for (const auto& seg : hyp_segments) hyp_len += seg.size();

  QualityReport report;
  if (hyp_len == 0) {
    report.bleu = 0.0;
    report.brevity_penalty = 0.0;
    return report;
  }

  constexpr double kEpsilon = 1e-9;
  double log_precision_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t matches = 0;
    std::size_t total = 0;
    for (std::size_t s = 0; s < hyp_segments.size(); ++s) {
      const auto hyp_counts = ngram_counts(hyp_segments[s], n);
      const auto ref_counts = ngram_counts(ref_segments[s], n);
      for (const auto& [gram, count] : hyp_counts) {
        total += count;
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
          matches += std::min(count, it->second);
        }
      }
    }
    double p;
    if (total == 0) {
      p = 1.0;  // no n-grams of this order anywhere: neutral
    } else if (matches == 0) {
      p = kEpsilon / static_cast<double>(total);
    } else {
      p = static_cast<double>(matches) / static_cast<double>(total);
    }
    report.ngram_precisions[n - 1] = p;
    log_precision_sum += std::log(p);
  }

  report.brevity_penalty =
      hyp_len < ref_len
          ? std::exp(1.0 - static_cast<double>(ref_len) /
                               static_cast<double>(hyp_len))
          : 1.0;
  report.bleu =
      100.0 * report.brevity_penalty * std::exp(log_precision_sum / 4.0);
  return report;
}

double average_lagging(const SessionTrace& trace,
                       const AlignedHypothesis& aligned) {
  const std::size_t I = aligned.total_tokens();
  if (trace.hypothesis.size() != I || trace.delays.size() != I) {
    throw TraceMismatchError(
        "trace hypothesis does not match the aligned token count");
  }
  const std::size_t J = trace.source_tokens_read;
  if (J == 0) {
    throw TraceMismatchError("trace read no source words");
  }
  if (I == 0) {
    return static_cast<double>(J);
  }
  const double r =
      static_cast<double>(I) / static_cast<double>(J);
  std::size_t tau = I;
  for (std::size_t i = 1; i <= I; ++i) {
    if (trace.delays[i - 1] == J) {
      tau = i;
      break;
    }
  }
  double sum = 0.0;
  for (std::size_t i = 1; i <= tau; ++i) {
    sum += static_cast<double>(trace.delays[i - 1]) -
           static_cast<double>(i - 1) / r;
  }
  return sum / static_cast<double>(tau);
}

std::vector<std::vector<std::size_t>> bootstrap_indices(
    std::size_t n_segments, std::size_t resamples, std::uint64_t seed) {
  if (n_segments < 2) {
    throw DataError("bootstrap needs at least 2 segments");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n_segments - 1);
  std::vector<std::vector<std::size_t>> plan(resamples);
  for (auto& row : plan) {
    row.reserve(n_segments);
    for (std::size_t i = 0; i < n_segments; ++i) row.push_back(pick(rng));
  }
  return plan;
}

double bootstrap_significance_with_indices(
    const std::vector<std::vector<std::string>>& hyp_a,
    const std::vector<std::vector<std::string>>& hyp_b,
    const std::vector<std::vector<std::string>>& refs,
    const std::vector<std::vector<std::size_t>>& indices) {
  const std::size_t n = refs.size();
  if (hyp_a.size() != n || hyp_b.size() != n) {
    throw DataError("system outputs and references must align segment-wise");
  }
  if (n < 2) {
    throw DataError("bootstrap needs at least 2 segments");
  }
  const double full_delta = bleu(hyp_a, refs).bleu - bleu(hyp_b, refs).bleu;
  if (full_delta == 0.0) {
    return 1.0;
  }
  if (indices.empty()) {
    throw DataError("bootstrap needs at least 1 resample");
  }
  std::size_t flips = 0;
  std::vector<std::vector<std::string>> sample_a, sample_b, sample_r;
  for (const auto& row : indices) {
    sample_a.clear();
    sample_b.clear();
    sample_r.clear();
    for (std::size_t idx : row) {
      if (idx >= n) {
        throw DataError("bootstrap index out of range");
      }
      sample_a.push_back(hyp_a[idx]);
      sample_b.push_back(hyp_b[idx]);
      sample_r.push_back(refs[idx]);
    }
    const double delta =
        bleu(sample_a, sample_r).bleu - bleu(sample_b, sample_r).bleu;
    if (delta * full_delta < 0.0) ++flips;
  }
  return static_cast<double>(flips) / static_cast<double>(indices.size());
}

double bootstrap_significance(
    const std::vector<std::vector<std::string>>& hyp_a,
    const std::vector<std::vector<std::string>>& hyp_b,
    const std::vector<std::vector<std::string>>& refs,
    std::size_t resamples, std::uint64_t seed) {
  if (resamples == 0) {
    throw ConfigError("bootstrap needs at least 1 resample");
  }
  return bootstrap_significance_with_indices(
      hyp_a, hyp_b, refs, bootstrap_indices(refs.size(), resamples, seed));
}

double boundary_accuracy(const std::vector<std::size_t>& commit_ends,
                         const std::vector<std::size_t>& gold_ends) {
  const std::size_t denom = std::max(commit_ends.size(), gold_ends.size());
  if (denom == 0) return 1.0;
  const std::size_t common = std::min(commit_ends.size(), gold_ends.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < common; ++i) {
    if (commit_ends[i] == gold_ends[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(denom);
}

std::pair<std::size_t, std::size_t> max_history_words(
    const SessionTrace& trace) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t src_total = 0;
  std::size_t tgt_total = 0;
  std::size_t max_src = 0;
  std::size_t max_tgt = 0;
  for (std::size_t e = 0; e < trace.events.size(); ++e) {
    const TraceEvent& event = trace.events[e];
    if (event.kind == TraceEvent::Kind::Commit) {
      pairs.emplace_back(event.src_words, event.tgt_words);
      src_total += event.src_words;
      tgt_total += event.tgt_words;
      const bool truncated =
          e + 1 < trace.events.size() &&
          trace.events[e + 1].kind == TraceEvent::Kind::Truncate;
      if (truncated) continue;  // settle after the truncation instead
    } else if (event.kind == TraceEvent::Kind::Truncate) {
      if (event.removed > pairs.size()) {
        throw TraceMismatchError("truncation removed more pairs than exist");
      }
      for (std::size_t i = 0; i < event.removed; ++i) {
        src_total -= pairs[i].first;
        tgt_total -= pairs[i].second;
      }
      pairs.erase(pairs.begin(),
                  pairs.begin() + static_cast<std::ptrdiff_t>(event.removed));
      if (src_total != event.src_words || tgt_total != event.tgt_words) {
        throw TraceMismatchError(
            "truncation totals disagree with the commit replay");
      }
    } else {
      continue;
    }
    max_src = std::max(max_src, src_total);
    max_tgt = std::max(max_tgt, tgt_total);
  }
  return {max_src, max_tgt};
}

void emit_curve(std::vector<CurvePoint> points,
                const std::filesystem::path& path) {
  std::stable_sort(points.begin(), points.end(),
                   [](const CurvePoint& a, const CurvePoint& b) {
                     return a.al < b.al;
                   });
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write curve file: " + path.string());
  }
  out << "system,k,AL,BLEU\n";
  out << std::fixed << std::setprecision(6);
  for (const CurvePoint& p : points) {
    out << p.system << ',' << p.k << ',' << p.al << ',' << p.bleu << '\n';
  }
}

}  // namespace streammt
