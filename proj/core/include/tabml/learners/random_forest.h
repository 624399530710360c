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

// Random forest of CART trees. Tree t is grown with seed DeriveSeed(seed, t)
// on a bootstrap sample (multiplicities used as weights) drawn from its own
// stream. Predict is the majority vote of the trees, ties to the lowest
// class; PredictProba is the mean of the leaf class distributions. The two
// can disagree on close calls.

#ifndef TABML_LEARNERS_RANDOM_FOREST_H_
#define TABML_LEARNERS_RANDOM_FOREST_H_

#include <cstdint>
#include <vector>

#include "tabml/learners/decision_tree.h"

namespace tabml {

struct ForestConfig {
  int n_estimators = 100;
  bool bootstrap = true;
  TreeConfig tree = [] {
    TreeConfig t;
    t.max_features.kind = MaxFeatures::Kind::kSqrt;
    return t;
  }();

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
  static ForestConfig FromJson(const nlohmann::json& j);
};

class RandomForest : public Classifier {
 public:
  explicit RandomForest(ForestConfig cfg = {}, uint64_t seed = 0)
      : cfg_(std::move(cfg)), seed_(seed) {
    cfg_.Validate();
  }

  std::string family() const override { return "forest"; }
  void Fit(const Matrix& X, const Labels& y) override;
  Matrix PredictProba(const Matrix& X) const override;
  Labels Predict(const Matrix& X) const override;

  nlohmann::ordered_json Params() const override;
  nlohmann::ordered_json State() const override;
  void LoadState(const nlohmann::json& state) override;

  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  ForestConfig cfg_;
  uint64_t seed_;
  std::vector<DecisionTree> trees_;
};

}  // namespace tabml

#endif  // TABML_LEARNERS_RANDOM_FOREST_H_
