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

#ifndef STREAMMT_POLICY_HPP
#define STREAMMT_POLICY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "streammt/decoder.hpp"
#include "streammt/features.hpp"
#include "streammt/trace.hpp"

namespace streammt {

// wait-k read/write schedule over the active chunk: read while fewer than k
// source words lead the target, otherwise write. Committed words drop out of
// both counts, so the lead is measured inside the current chunk only.
class WaitKPolicy {
 public:
  explicit WaitKPolicy(std::size_t k);

  std::size_t k() const { return k_; }

  bool should_read(std::size_t chunk_source_words,
                   std::size_t chunk_target_words,
                   bool source_available) const;

 private:
  std::size_t k_;
};

// Boundary guess from a global length ratio r (target words per source
// word): Y target words correspond to floor(Y / r) source words; subtracting
// what was already consumed gives the span still owed, clamped to the
// current chunk.
std::size_t naive_boundary(std::size_t target_words, double ratio,
                           std::size_t consumed_source_words,
                           std::size_t chunk_len);

// Everything a boundary mechanism may look at when a segment closes.
struct BoundaryQuery {
  std::vector<std::string> chunk_source;  // active chunk source surfaces
  std::vector<std::string> segment;       // target words since the last SEP
  std::size_t consumed_source_words = 0;  // committed source words so far
  std::size_t total_target_words = 0;     // content words written so far
};

// Picks how many chunk-source tokens the closing segment consumes.
class BoundaryMechanism {
 public:
  virtual ~BoundaryMechanism() = default;

  // Returns a position in [0, |chunk_source|].
  virtual std::size_t propose_boundary(const BoundaryQuery& query) const = 0;
};

// The trained mechanism: weighted feature scores, argmax position.
class LogLinearMechanism : public BoundaryMechanism {
 public:
  LogLinearMechanism(FeatureSet features, FeatureWeights weights);

  std::size_t propose_boundary(const BoundaryQuery& query) const override;

 private:
  FeatureSet features_;
  FeatureWeights weights_;
};

struct NaiveOffsetConfig {
  double ratio = 1.0;       // target words per source word
  bool per_segment = false; // use the closing segment length, not the total
};

// Length-ratio baseline built on naive_boundary().
class NaiveMechanism : public BoundaryMechanism {
 public:
  explicit NaiveMechanism(NaiveOffsetConfig config);

  std::size_t propose_boundary(const BoundaryQuery& query) const override;

 private:
  NaiveOffsetConfig config_;
};

// For pre-segmented streams: consume through the first SEP marker in the
// chunk, or the whole chunk when no marker is present.
class SourceSepMechanism : public BoundaryMechanism {
 public:
  std::size_t propose_boundary(const BoundaryQuery& query) const override;
};

struct SessionOptions {
  std::size_t wait_k = 3;
  std::size_t history_cap = 50;  // words per side kept as context
  std::size_t beam = 4;
  std::size_t max_new = 0;       // speculative rollout depth; 0 = 2 * wait_k
};

// Streams source_words through the decoder under the wait-k schedule. At
// every segment close the mechanism places the source boundary, the pair is
// committed to the rolling history, and the history is re-capped. The
// returned trace has its derived views filled in.
SessionTrace run_segfree_session(const IncrementalDecoder& decoder,
                                 const BoundaryMechanism& mechanism,
                                 const std::vector<std::string>& source_words,
                                 const SessionOptions& options);

// Same loop over a stream that already carries SEP markers (the segmented
// baseline). Markers ride along with the preceding word's read and never
// count as source words; commits consume through the first marker.
SessionTrace run_segmented_session(const IncrementalDecoder& decoder,
                                   const std::vector<std::string>& source_words,
                                   const SessionOptions& options);

}  // namespace streammt

#endif  // STREAMMT_POLICY_HPP
