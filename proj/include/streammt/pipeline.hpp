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

#ifndef STREAMMT_PIPELINE_HPP
#define STREAMMT_PIPELINE_HPP

#include <string>
#include <vector>

#include "streammt/config.hpp"
#include "streammt/corpus.hpp"
#include "streammt/evaluation.hpp"
#include "streammt/features.hpp"
#include "streammt/linreg.hpp"
#include "streammt/policy.hpp"
#include "streammt/reverse_model.hpp"
#include "streammt/synthetic.hpp"
#include "streammt/toy_decoder.hpp"
#include "streammt/trace.hpp"

namespace streammt {

// Everything cmd-train produces, shared by the simulation entry points.
struct TrainedModels {
  ReverseLexicalModel reverse;
  LinRegParams linreg;
  FeatureWeights weights;
  std::vector<std::string> feature_names;
  double naive_ratio = 1.0;
  EmTrainingStats em_stats;
  WeightTrainingResult weight_log;
};

// Builds the configured feature stack (reverse model first, then the length
// prior) together with its names; the reverse model is copied into the
// feature so the set owns its state.
FeatureSet assemble_features(bool use_reverse_mt, bool use_linreg,
                             const ReverseLexicalModel& reverse,
                             const LinRegParams& linreg,
                             std::vector<std::string>* names = nullptr);

// Train split -> reverse model, length regression and naive ratio;
// dev split -> feature weights. Prefix augmentation (when enabled) doubles
// every sample list with proportional sentence prefixes.
TrainedModels train_models(const std::vector<Document>& train_docs,
                           const std::vector<Document>& dev_docs,
                           const ExperimentConfig& config);

// Streams one document under the given mode ("segfree", "naive",
// "segmented-oracle", "segmented-fixed") and wait-k value. `boundaries` are
// the document's gold sentence ends (used by the oracle segmenter only).
SessionTrace simulate_document(const std::string& mode, const Document& doc,
                               const std::vector<std::size_t>& boundaries,
                               const ToyLexicon& lexicon,
                               const TrainedModels& models, std::size_t k,
                               const ExperimentConfig& config);

struct VideoEval {
  std::string doc_id;
  double al = 0.0;
  std::size_t edit_distance = 0;
  double boundary_acc = 0.0;
};

struct SystemEval {
  std::string mode;
  std::size_t k = 0;
  QualityReport quality;
  double mean_al = 0.0;
  double mean_boundary_accuracy = 0.0;
  std::vector<VideoEval> videos;
  // Realigned segments in document order, for significance testing.
  std::vector<std::vector<std::string>> hyp_segments;
  std::vector<std::vector<std::string>> ref_segments;
};

// Realigns every trace against its document, then aggregates corpus BLEU,
// mean per-video AL and mean boundary accuracy. docs, boundaries and traces
// run in parallel by index.
SystemEval evaluate_system(const std::string& mode, std::size_t k,
                           const std::vector<Document>& docs,
                           const std::vector<std::vector<std::size_t>>& boundaries,
                           const std::vector<SessionTrace>& traces);

}  // namespace streammt

#endif  // STREAMMT_PIPELINE_HPP
