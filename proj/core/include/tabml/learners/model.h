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

// Uniform classifier contract. X has one row per sample; y holds class codes
// 0..C-1 and every class must be present at fit time.

#ifndef TABML_LEARNERS_MODEL_H_
#define TABML_LEARNERS_MODEL_H_

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

namespace tabml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;

inline constexpr int kModelFormatVersion = 1;

class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string family() const = 0;
  virtual void Fit(const Matrix& X, const Labels& y) = 0;

  // Rows are probability vectors summing to one.
  virtual Matrix PredictProba(const Matrix& X) const = 0;
  // Per-class real scores; defaults to the probabilities.
  virtual Matrix DecisionScores(const Matrix& X) const { return PredictProba(X); }
  // Defaults to the row argmax of PredictProba, ties to the lowest code.
  virtual Labels Predict(const Matrix& X) const;

  int n_classes() const { return n_classes_; }
  int n_features() const { return n_features_; }
  bool fitted() const { return n_classes_ > 0; }

  // Hyper-parameters as accepted by MakeClassifier.
  virtual nlohmann::ordered_json Params() const = 0;
  // Learned state only.
  virtual nlohmann::ordered_json State() const = 0;
  virtual void LoadState(const nlohmann::json& state) = 0;

  // Versioned document {format, version, family, params, n_classes,
  // n_features, state}.
  nlohmann::ordered_json ToJson() const;

 protected:
  void SetShape(int n_classes, int n_features) {
    n_classes_ = n_classes;
    n_features_ = n_features;
  }
  void CheckPredictInput(const Matrix& X) const;

 private:
  int n_classes_ = 0;
  int n_features_ = 0;
};

// Validates fit inputs (finite X, matching lengths, codes 0..C-1 all present)
// and returns C. Throws DataError.
int CheckFitInputs(const Matrix& X, const Labels& y);

// Row-wise argmax, first maximum wins.
Labels ArgmaxRows(const Matrix& M);

// Numerically stable row-wise softmax.
Matrix SoftmaxRows(const Matrix& Z);

// Balanced per-sample weights N / (C * n_class(y)).
Vector BalancedWeights(const Labels& y, int n_classes);

// Rebuilds a fitted model from ToJson() output.
std::unique_ptr<Classifier> ClassifierFromJson(const nlohmann::json& doc);

}  // namespace tabml

#endif  // TABML_LEARNERS_MODEL_H_
