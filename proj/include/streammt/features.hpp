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

#ifndef STREAMMT_FEATURES_HPP
#define STREAMMT_FEATURES_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "streammt/linreg.hpp"
#include "streammt/reverse_model.hpp"

namespace streammt {

// Guard against double underflow in feature adapters; far below any
// data-driven score but keeps FeatureScores strictly positive.
inline constexpr double kScoreFloor = 1e-290;

// Strictly positive feature scores h[f][a] for boundary positions
// a = 1..positions.
class FeatureScores {
 public:
  FeatureScores(std::size_t features, std::size_t positions);

  // Row-wise construction; every row must have the same length.
  static FeatureScores from_rows(const std::vector<std::vector<double>>& rows);

  double at(std::size_t f, std::size_t a) const;  // a is 1-based
  void set(std::size_t f, std::size_t a, double v);

  std::size_t feature_count() const { return features_; }
  std::size_t positions() const { return positions_; }

 private:
  std::size_t features_;
  std::size_t positions_;
  std::vector<double> h_;
};

struct FeatureWeights {
  std::vector<double> lambda;
};

// Normalized distribution over boundary positions 1..n; p[a-1] = p(a).
struct PositionPosterior {
  std::vector<double> p;

  double at(std::size_t a) const { return p.at(a - 1); }
  double sum() const;
};

// Log-linear posterior over positions: softmax_a of sum_f lambda_f log h[f][a],
// computed in log space with a max shift.
PositionPosterior position_posterior(const FeatureScores& scores,
                                     const FeatureWeights& weights);

// argmax_a sum_f lambda_f log h[f][a]; ties go to the largest position.
// Returns a 1-based position.
std::size_t select_boundary(const FeatureScores& scores,
                            const FeatureWeights& weights);

// A boundary feature scores every prefix length of a source chunk against
// the current target segment. Scores are strictly positive.
class BoundaryFeature {
 public:
  virtual ~BoundaryFeature() = default;
  virtual std::string name() const = 0;
  virtual std::vector<double> scores(
      const std::vector<std::string>& chunk,
      const std::vector<std::string>& segment) const = 0;
};

using FeatureSet = std::vector<std::shared_ptr<BoundaryFeature>>;

// Stacks every feature's scores for one chunk into a matrix.
FeatureScores score_chunk(const FeatureSet& features,
                          const std::vector<std::string>& chunk,
                          const std::vector<std::string>& segment);

// Prefix likelihood of the chunk under a reverse lexical model.
class ReverseMtFeature : public BoundaryFeature {
 public:
  explicit ReverseMtFeature(std::shared_ptr<const ReverseLexicalModel> model)
      : model_(std::move(model)) {}
  std::string name() const override { return "reverse_mt"; }
  std::vector<double> scores(
      const std::vector<std::string>& chunk,
      const std::vector<std::string>& segment) const override;

 private:
  std::shared_ptr<const ReverseLexicalModel> model_;
};

// Gaussian position prior from the length regression.
class LinRegFeature : public BoundaryFeature {
 public:
  explicit LinRegFeature(LinRegParams params) : params_(params) {}
  std::string name() const override { return "linreg"; }
  std::vector<double> scores(
      const std::vector<std::string>& chunk,
      const std::vector<std::string>& segment) const override;

 private:
  LinRegParams params_;
};

// One supervised example for weight training; the correct boundary class is
// always the full chunk length.
struct BoundaryTrainingSample {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::size_t label = 0;  // must equal |source|
};

struct WeightTrainingConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 200;
};

struct WeightTrainingResult {
  FeatureWeights weights;
  double initial_loss = 0.0;         // loss at the all-ones initialization
  std::vector<double> epoch_losses;  // loss after each epoch's update

  double final_loss() const {
    return epoch_losses.empty() ? initial_loss : epoch_losses.back();
  }
};

// Full-batch gradient descent on the cross-entropy of the true boundary
// class, weights initialized to 1. Raises TrainingError (naming the epoch)
// if the loss becomes non-finite.
WeightTrainingResult train_weights(
    const std::vector<BoundaryTrainingSample>& samples,
    const FeatureSet& features, const WeightTrainingConfig& config = {});

}  // namespace streammt

#endif  // STREAMMT_FEATURES_HPP
