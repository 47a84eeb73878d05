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

#include "streammt/features.hpp"

#include <algorithm>
#include <cmath>

#include "streammt/errors.hpp"

namespace streammt {

FeatureScores::FeatureScores(std::size_t features, std::size_t positions)
    : features_(features), positions_(positions) {
  if (features == 0 || positions == 0) {
    throw DataError("feature score matrix must be non-empty");
  }
  h_.assign(features * positions, 1.0);
}

FeatureScores FeatureScores::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DataError("feature score matrix must be non-empty");
  }
  FeatureScores scores(rows.size(), rows.front().size());
  for (std::size_t f = 0; f < rows.size(); ++f) {
    if (rows[f].size() != scores.positions_) {
      throw DataError("feature score rows must have equal length");
    }
    for (std::size_t a = 1; a <= scores.positions_; ++a) {
      scores.set(f, a, rows[f][a - 1]);
    }
  }
  return scores;
}

double FeatureScores::at(std::size_t f, std::size_t a) const {
  if (f >= features_ || a < 1 || a > positions_) {
    throw BoundaryDomainError("feature score index out of range");
  }
  return h_[f * positions_ + (a - 1)];
}

void FeatureScores::set(std::size_t f, std::size_t a, double v) {
  if (f >= features_ || a < 1 || a > positions_) {
    throw BoundaryDomainError("feature score index out of range");
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DataError("feature scores must be strictly positive and finite");
  }
  h_[f * positions_ + (a - 1)] = v;
}

double PositionPosterior::sum() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

namespace {

// Unnormalized log scores: s[a-1] = sum_f lambda_f * log h[f][a].
std::vector<double> log_scores(const FeatureScores& scores,
                               const FeatureWeights& weights) {
  if (weights.lambda.size() != scores.feature_count()) {
    throw DataError("weight vector length does not match feature count");
  }
  std::vector<double> s(scores.positions(), 0.0);
  for (std::size_t f = 0; f < scores.feature_count(); ++f) {
    const double lambda = weights.lambda[f];
    for (std::size_t a = 1; a <= scores.positions(); ++a) {
      s[a - 1] += lambda * std::log(scores.at(f, a));
    }
  }
  return s;
}

}  // namespace

PositionPosterior position_posterior(const FeatureScores& scores,
                                     const FeatureWeights& weights) {
  std::vector<double> s = log_scores(scores, weights);
  const double shift = *std::max_element(s.begin(), s.end());
  double z = 0.0;
  for (double& v : s) {
    v = std::exp(v - shift);
    z += v;
  }
  PositionPosterior posterior;
  posterior.p.reserve(s.size());
  for (double v : s) posterior.p.push_back(v / z);
  return posterior;
}

std::size_t select_boundary(const FeatureScores& scores,
                            const FeatureWeights& weights) {
  const std::vector<double> s = log_scores(scores, weights);
  std::size_t best = 1;
  for (std::size_t a = 2; a <= s.size(); ++a) {
    if (s[a - 1] >= s[best - 1]) best = a;  // ties go to the largest position
  }
  return best;
}

FeatureScores score_chunk(const FeatureSet& features,
                          const std::vector<std::string>& chunk,
                          const std::vector<std::string>& segment) {
  if (features.empty()) {
    throw ConfigError("at least one boundary feature is required");
  }
  if (chunk.empty()) {
    throw DataError("cannot score an empty chunk");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(features.size());
  for (const auto& feature : features) {
    std::vector<double> row = feature->scores(chunk, segment);
    if (row.size() != chunk.size()) {
      throw DataError("feature " + feature->name() +
                      " returned a row of the wrong length");
    }
    rows.push_back(std::move(row));
  }
  return FeatureScores::from_rows(rows);
}

std::vector<double> ReverseMtFeature::scores(
    const std::vector<std::string>& chunk,
    const std::vector<std::string>& segment) const {
  std::vector<double> row;
  row.reserve(chunk.size());
  double score = 1.0;
  for (std::size_t a = 1; a <= chunk.size(); ++a) {
    score *= model_->position_factor(chunk[a - 1], segment);
    row.push_back(score > kScoreFloor ? score : kScoreFloor);
  }
  return row;
}

std::vector<double> LinRegFeature::scores(
    const std::vector<std::string>& chunk,
    const std::vector<std::string>& segment) const {
  std::vector<double> row;
  row.reserve(chunk.size());
  for (std::size_t a = 1; a <= chunk.size(); ++a) {
    const double d = gaussian_score(params_, a, segment.size());
    row.push_back(d > kScoreFloor ? d : kScoreFloor);
  }
  return row;
}

WeightTrainingResult train_weights(
    const std::vector<BoundaryTrainingSample>& samples,
    const FeatureSet& features, const WeightTrainingConfig& config) {
  if (samples.empty()) {
    throw DataError("weight training needs at least one sample");
  }
  for (const BoundaryTrainingSample& s : samples) {
    if (s.source.empty()) {
      throw DataError("weight training samples need a non-empty chunk");
    }
    if (s.label != s.source.size()) {
      throw DataError("sample label must equal the chunk length");
    }
  }

  // Precompute log h[f][a] per sample; the feature scores do not depend on
  // the weights.
  const std::size_t n_features = features.size();
  struct SampleScores {
    std::vector<std::vector<double>> log_h;  // [f][a-1]
    std::size_t label;
  };
  std::vector<SampleScores> cache;
  cache.reserve(samples.size());
  for (const BoundaryTrainingSample& s : samples) {
    const FeatureScores scores = score_chunk(features, s.source, s.target);
    SampleScores entry;
    entry.label = s.label;
    entry.log_h.assign(n_features,
                       std::vector<double>(scores.positions(), 0.0));
    for (std::size_t f = 0; f < n_features; ++f) {
      for (std::size_t a = 1; a <= scores.positions(); ++a) {
        entry.log_h[f][a - 1] = std::log(scores.at(f, a));
      }
    }
    cache.push_back(std::move(entry));
  }

  std::vector<double> lambda(n_features, 1.0);

  auto evaluate = [&](const std::vector<double>& l, std::vector<double>* grad) {
    if (grad != nullptr) grad->assign(n_features, 0.0);
    double loss = 0.0;
    std::vector<double> s;
    for (const SampleScores& sample : cache) {
      const std::size_t n = sample.log_h.front().size();
      s.assign(n, 0.0);
      for (std::size_t f = 0; f < n_features; ++f) {
        for (std::size_t a = 0; a < n; ++a) {
          s[a] += l[f] * sample.log_h[f][a];
        }
      }
      const double shift = *std::max_element(s.begin(), s.end());
      double z = 0.0;
      for (double v : s) z += std::exp(v - shift);
      const double log_z = shift + std::log(z);
      loss -= s[sample.label - 1] - log_z;
      if (grad != nullptr) {
        for (std::size_t f = 0; f < n_features; ++f) {
          double expected = 0.0;
          for (std::size_t a = 0; a < n; ++a) {
            expected += std::exp(s[a] - log_z) * sample.log_h[f][a];
          }
          (*grad)[f] -= sample.log_h[f][sample.label - 1] - expected;
        }
      }
    }
    return loss;
  };

  WeightTrainingResult result;
  result.initial_loss = evaluate(lambda, nullptr);
  result.epoch_losses.reserve(config.epochs);
  std::vector<double> grad;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    evaluate(lambda, &grad);
    for (std::size_t f = 0; f < n_features; ++f) {
      lambda[f] -= config.learning_rate * grad[f];
    }
    const double loss = evaluate(lambda, nullptr);
    if (!std::isfinite(loss)) {
      throw TrainingError("weight training diverged at epoch " +
                          std::to_string(epoch));
    }
    result.epoch_losses.push_back(loss);
  }
  result.weights.lambda = std::move(lambda);
  return result;
}

}  // namespace streammt
