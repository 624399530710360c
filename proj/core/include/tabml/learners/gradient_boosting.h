/*
 * Copyright 2026 The tabml Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Multiclass gradient-boosted regression trees on the softmax log-loss with
// second-order (Newton) leaf values, in the style of XGBoost:
//   gain  = G_L^2 / (H_L + lambda) + G_R^2 / (H_R + lambda) - G^2 / (H + lambda)
//   leaf  = -learning_rate * G / (H + lambda)
// with g = p - y and h = p (1 - p) per class. Each round grows one tree per
// class on a column subsample shared by the classes. Scores start at the log
// class priors, so a zero learning rate predicts the majority class.

#ifndef TABML_LEARNERS_GRADIENT_BOOSTING_H_
#define TABML_LEARNERS_GRADIENT_BOOSTING_H_

#include <cstdint>
#include <vector>

#include "tabml/learners/model.h"

namespace tabml {

struct BoostConfig {
  double learning_rate = 0.1;
  int n_estimators = 100;
  double colsample_bytree = 1.0;
  int max_depth = 6;
  double reg_lambda = 1e-3;
  double min_child_weight = 1e-3;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
  static BoostConfig FromJson(const nlohmann::json& j);
};

struct RegressionNode {
  int feature = -1;  // -1 marks a leaf.
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // Leaf output, learning rate applied.
};

using RegressionTree = std::vector<RegressionNode>;

class GradientBoosting : public Classifier {
 public:
  explicit GradientBoosting(BoostConfig cfg = {}, uint64_t seed = 0)
      : cfg_(cfg), seed_(seed) {
    cfg_.Validate();
  }

  std::string family() const override { return "gbt"; }
  void Fit(const Matrix& X, const Labels& y) override;
  Matrix PredictProba(const Matrix& X) const override;
  Matrix DecisionScores(const Matrix& X) const override;

  nlohmann::ordered_json Params() const override;
  nlohmann::ordered_json State() const override;
  void LoadState(const nlohmann::json& state) override;

  const Vector& base_score() const { return base_; }
  // trees()[round * C + class].
  const std::vector<RegressionTree>& trees() const { return trees_; }
  // Mean training log-loss after each round.
  const std::vector<double>& train_loss() const { return train_loss_; }

 private:
  BoostConfig cfg_;
  uint64_t seed_;
  Vector base_;
  std::vector<RegressionTree> trees_;
  std::vector<double> train_loss_;
};

}  // namespace tabml

#endif  // TABML_LEARNERS_GRADIENT_BOOSTING_H_
