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

#include "streammt/pipeline.hpp"

#include <memory>
#include <random>
#include <utility>

#include "streammt/errors.hpp"
#include "streammt/segmenter.hpp"

namespace streammt {

namespace {

std::vector<std::string> flatten_source(const Document& doc) {
  std::vector<std::string> words;
  for (const SentencePair& pair : doc.pairs) {
    words.insert(words.end(), pair.source.begin(), pair.source.end());
  }
  return words;
}

BoundaryTrainingSample boundary_sample(const TrainingSample& sample) {
  BoundaryTrainingSample out;
  out.source = sample.current_source();
  out.target = sample.current_target();
  out.label = out.source.size();
  return out;
}

}  // namespace

FeatureSet assemble_features(bool use_reverse_mt, bool use_linreg,
                             const ReverseLexicalModel& reverse,
                             const LinRegParams& linreg,
                             std::vector<std::string>* names) {
  FeatureSet features;
  if (use_reverse_mt) {
    features.push_back(std::make_shared<ReverseMtFeature>(
        std::make_shared<const ReverseLexicalModel>(reverse)));
  }
  if (use_linreg) {
    features.push_back(std::make_shared<LinRegFeature>(linreg));
  }
  if (features.empty()) {
    throw ConfigError("at least one boundary feature must be enabled");
  }
  if (names != nullptr) {
    names->clear();
    for (const auto& feature : features) {
      names->push_back(feature->name());
    }
  }
  return features;
}

TrainedModels train_models(const std::vector<Document>& train_docs,
                           const std::vector<Document>& dev_docs,
                           const ExperimentConfig& config) {
  if (train_docs.empty()) {
    throw DataError("training requires a non-empty train split");
  }
  if (dev_docs.empty()) {
    throw DataError("training requires a non-empty dev split");
  }
  std::mt19937_64 rng(stage_seed(config.seed, "train"));

  // Sentence pairs (plus, when enabled, one random prefix of each) feed the
  // EM lexicon and the length regression; history tokens stay out of both so
  // the co-occurrence counts describe single sentences.
  std::vector<SentencePair> em_corpus;
  std::vector<LengthObservation> lengths;
  for (const Document& doc : train_docs) {
    for (const TrainingSample& sample :
         build_history_samples(doc, config.history_cap)) {
      SentencePair pair{sample.current_source(), sample.current_target()};
      lengths.push_back({pair.target.size(), pair.source.size()});
      em_corpus.push_back(std::move(pair));
      if (config.trainer.prefix_augment) {
        TrainingSample prefix =
            prefix_augment(sample, rng, config.trainer.prefix_independent);
        SentencePair cut{prefix.current_source(), prefix.current_target()};
        lengths.push_back({cut.target.size(), cut.source.size()});
        em_corpus.push_back(std::move(cut));
      }
    }
  }

  TrainedModels models;
  models.reverse = ReverseLexicalModel::train(
      em_corpus, config.trainer.em_iterations, &models.em_stats);
  models.linreg = fit_linreg(lengths);
  models.naive_ratio = median_target_source_ratio(train_docs);

  // Weight training runs on the held-out dev split; the label is always the
  // full chunk length, which is what makes the cross-entropy informative.
  std::vector<BoundaryTrainingSample> dev_samples;
  for (const Document& doc : dev_docs) {
    for (const TrainingSample& sample :
         build_history_samples(doc, config.history_cap)) {
      dev_samples.push_back(boundary_sample(sample));
      if (config.trainer.prefix_augment) {
        dev_samples.push_back(boundary_sample(
            prefix_augment(sample, rng, config.trainer.prefix_independent)));
      }
    }
  }

  FeatureSet features =
      assemble_features(config.use_reverse_mt, config.use_linreg,
                        models.reverse, models.linreg, &models.feature_names);
  models.weight_log = train_weights(
      dev_samples, features,
      {config.trainer.learning_rate, config.trainer.epochs});
  models.weights = models.weight_log.weights;
  return models;
}

SessionTrace simulate_document(const std::string& mode, const Document& doc,
                               const std::vector<std::size_t>& boundaries,
                               const ToyLexicon& lexicon,
                               const TrainedModels& models, std::size_t k,
                               const ExperimentConfig& config) {
  if (!is_known_mode(mode)) {
    throw ConfigError("unknown mode: " + mode);
  }
  const std::vector<std::string> source_words = flatten_source(doc);
  SessionOptions options;
  options.wait_k = k;
  options.history_cap = config.history_cap;
  options.beam = config.beam;
  options.max_new = config.max_new;

  if (mode == "segfree") {
    const ToyDecoder decoder(lexicon, config.decoder_epsilon);
    const LogLinearMechanism mechanism(
        assemble_features(config.use_reverse_mt, config.use_linreg,
                          models.reverse, models.linreg),
        models.weights);
    return run_segfree_session(decoder, mechanism, source_words, options);
  }
  if (mode == "naive") {
    const ToyDecoder decoder(lexicon, config.decoder_epsilon);
    const NaiveMechanism mechanism(
        {models.naive_ratio, config.naive_per_segment});
    return run_segfree_session(decoder, mechanism, source_words, options);
  }

  // The segmented baselines translate a pre-cut stream, so the decoder works
  // from the lexicon view where SEP is an explicit fertility-0 terminator.
  const ToyDecoder decoder(lexicon.segmented_view(), config.decoder_epsilon);
  std::vector<std::string> marked;
  if (mode == "segmented-oracle") {
    marked = mark_boundaries(source_words, OracleSegmenter(boundaries));
  } else {  // segmented-fixed
    marked =
        mark_boundaries(source_words, FixedLengthSegmenter(config.fixed_segment_len));
  }
  return run_segmented_session(decoder, marked, options);
}

SystemEval evaluate_system(
    const std::string& mode, std::size_t k, const std::vector<Document>& docs,
    const std::vector<std::vector<std::size_t>>& boundaries,
    const std::vector<SessionTrace>& traces) {
  if (docs.size() != traces.size() || docs.size() != boundaries.size()) {
    throw DataError("evaluate_system needs one trace and one boundary list per document");
  }
  if (docs.empty()) {
    throw DataError("evaluate_system needs at least one document");
  }

  SystemEval eval;
  eval.mode = mode;
  eval.k = k;
  double al_sum = 0.0;
  double acc_sum = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<std::vector<std::string>> refs;
    for (const SentencePair& pair : docs[d].pairs) {
      refs.push_back(pair.target);
    }
    const AlignedHypothesis aligned = realign(traces[d].hypothesis, refs);

    VideoEval video;
    video.doc_id = docs[d].id;
    video.al = average_lagging(traces[d], aligned);
    video.edit_distance = aligned.total_edit_distance;
    video.boundary_acc = boundary_accuracy(traces[d].commit_ends, boundaries[d]);
    al_sum += video.al;
    acc_sum += video.boundary_acc;
    eval.videos.push_back(std::move(video));

    for (std::size_t s = 0; s < refs.size(); ++s) {
      eval.hyp_segments.push_back(aligned.segments[s]);
      eval.ref_segments.push_back(refs[s]);
    }
  }
  eval.quality = bleu(eval.hyp_segments, eval.ref_segments);
  eval.mean_al = al_sum / static_cast<double>(docs.size());
  eval.mean_boundary_accuracy = acc_sum / static_cast<double>(docs.size());
  return eval;
}

}  // namespace streammt
