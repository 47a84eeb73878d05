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

#ifndef STREAMMT_EVALUATION_HPP
#define STREAMMT_EVALUATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "streammt/trace.hpp"

namespace streammt {

// The hypothesis stream cut into one span per reference segment. Spans are
// monotone, disjoint and exhaustive; boundaries[i] is the cumulative token
// end of segment i.
struct AlignedHypothesis {
  std::vector<std::vector<std::string>> segments;
  std::vector<std::size_t> boundaries;
  std::size_t total_edit_distance = 0;

  std::size_t total_tokens() const;
};

// Cuts hyp into |refs| spans minimizing the summed word-level edit distance
// (unit insert/delete/substitute costs) against the references. Ties are
// resolved toward earlier segment starts during backtracking. An empty
// hypothesis yields all-empty segments at distance = total reference length.
AlignedHypothesis realign(const std::vector<std::string>& hyp,
                          const std::vector<std::vector<std::string>>& refs);

struct QualityReport {
  double bleu = 0.0;  // 0..100
  std::array<double, 4> ngram_precisions{1.0, 1.0, 1.0, 1.0};
  double brevity_penalty = 1.0;
};

// Corpus-level BLEU-4 with clipped modified n-gram precisions. Orders with
// zero matches score epsilon (1e-9) over their total; orders with no n-grams
// at all are neutral (precision 1). Brevity penalty exp(1 - R/H) when the
// hypothesis is shorter than the reference. Equal corpora score exactly 100.
QualityReport bleu(const std::vector<std::vector<std::string>>& hyp_segments,
                   const std::vector<std::vector<std::string>>& ref_segments);

// Stream-level average lagging of one video: r = I/J, tau = first hypothesis
// token written with the source fully read (tau = I when none is), and
// AL = (1/tau) * sum_{i<=tau} (g(i) - (i-1)/r). An empty hypothesis scores J.
double average_lagging(const SessionTrace& trace,
                       const AlignedHypothesis& aligned);

// Shared resample plan so significance runs are reproducible and the
// estimator can be probed with hand-built index sets.
std::vector<std::vector<std::size_t>> bootstrap_indices(
    std::size_t n_segments, std::size_t resamples, std::uint64_t seed);

// Paired bootstrap over segments: p = fraction of resamples whose BLEU delta
// flips sign against the full-corpus delta; a zero full delta reports 1.
double bootstrap_significance_with_indices(
    const std::vector<std::vector<std::string>>& hyp_a,
    const std::vector<std::vector<std::string>>& hyp_b,
    const std::vector<std::vector<std::string>>& refs,
    const std::vector<std::vector<std::size_t>>& indices);

double bootstrap_significance(
    const std::vector<std::vector<std::string>>& hyp_a,
    const std::vector<std::vector<std::string>>& hyp_b,
    const std::vector<std::vector<std::string>>& refs,
    std::size_t resamples, std::uint64_t seed);

// Fraction of boundary positions placed exactly: position-wise matches of
// commit ends against gold sentence ends over max(|commits|, |gold|).
double boundary_accuracy(const std::vector<std::size_t>& commit_ends,
                         const std::vector<std::size_t>& gold_ends);

// Replays the COMMIT/TRUNCATE bookkeeping of a trace and returns the largest
// (source, target) history word totals left standing once each commit and
// its truncation settled. Raises TraceMismatchError when the recorded
// truncation totals disagree with the replay.
std::pair<std::size_t, std::size_t> max_history_words(
    const SessionTrace& trace);

struct CurvePoint {
  std::string system;
  std::size_t k = 0;
  double al = 0.0;
  double bleu = 0.0;
};

// Writes "system,k,AL,BLEU" rows sorted by AL ascending.
void emit_curve(std::vector<CurvePoint> points,
                const std::filesystem::path& path);

}  // namespace streammt

#endif  // STREAMMT_EVALUATION_HPP
