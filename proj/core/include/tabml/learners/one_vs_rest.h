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

// One-vs-rest over binary logistic models. Class c's model separates c
// (label 1) from the rest. Decision scores are the per-class w.x + b;
// probabilities are the per-class sigmoids renormalised to sum to one.
// With two classes a single model (class 1 vs class 0) is fitted and the
// scores are (-s, s), so predictions match that binary model exactly.

#ifndef TABML_LEARNERS_ONE_VS_REST_H_
#define TABML_LEARNERS_ONE_VS_REST_H_

#include <vector>

#include "tabml/learners/logistic.h"

namespace tabml {

class OneVsRest : public Classifier {
 public:
  explicit OneVsRest(LrConfig cfg = {}) : cfg_(cfg) { cfg_.Validate(); }

  std::string family() const override { return "ovr"; }
  void Fit(const Matrix& X, const Labels& y) override;
  Matrix PredictProba(const Matrix& X) const override;
  Matrix DecisionScores(const Matrix& X) const override;

  nlohmann::ordered_json Params() const override { return cfg_.ToJson(); }
  nlohmann::ordered_json State() const override;
  void LoadState(const nlohmann::json& state) override;

  const std::vector<BinaryLogistic>& binaries() const { return models_; }

 private:
  LrConfig cfg_;
  std::vector<BinaryLogistic> models_;
};

}  // namespace tabml

#endif  // TABML_LEARNERS_ONE_VS_REST_H_
