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

// Multinomial (softmax) and binary logistic regression.
//
// Objective, with N samples, per-sample weights w_i and L2 penalty:
//   (1/N) * ( sum_i w_i * loss_i + ||W||^2 / (2 C) )
// The intercept is not penalised. Scaling by 1/N leaves the optimum
// unchanged and keeps the gradient tolerance independent of N. Both models
// start from zero parameters and are fitted by MinimizeGradientDescent.

#ifndef TABML_LEARNERS_LOGISTIC_H_
#define TABML_LEARNERS_LOGISTIC_H_

#include "tabml/learners/model.h"

namespace tabml {

enum class Penalty { kNone, kL2 };
enum class ClassWeight { kUniform, kBalanced };

struct LrConfig {
  Penalty penalty = Penalty::kL2;
  double C = 1.0;
  ClassWeight class_weight = ClassWeight::kUniform;
  int max_iter = 1000;
  double tol = 1e-6;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
  static LrConfig FromJson(const nlohmann::json& j);
};

// Softmax cross-entropy objective over packed parameters theta, laid out as
// the column-major (p + 1) x C matrix [W; b^T]. Exposed for gradient checks.
class SoftmaxLoss {
 public:
  // `l2` is the coefficient of ||W||^2 / 2 before the 1/N scaling (1/C, or 0).
  SoftmaxLoss(const Matrix& X, const Labels& y, int n_classes, Vector weights, double l2);

  double Value(const Vector& theta) const;
  double ValueAndGradient(const Vector& theta, Vector* grad) const;
  Eigen::Index dim() const { return (X_.cols() + 1) * n_classes_; }

 private:
  const Matrix& X_;
  Matrix Y_;  // One-hot targets.
  Vector w_;
  int n_classes_;
  double l2_;
};

class SoftmaxRegression : public Classifier {
 public:
  explicit SoftmaxRegression(LrConfig cfg = {}) : cfg_(cfg) { cfg_.Validate(); }

  std::string family() const override { return "lr"; }
  void Fit(const Matrix& X, const Labels& y) override;
  Matrix PredictProba(const Matrix& X) const override;
  Matrix DecisionScores(const Matrix& X) const override;

  nlohmann::ordered_json Params() const override { return cfg_.ToJson(); }
  nlohmann::ordered_json State() const override;
  void LoadState(const nlohmann::json& state) override;

  const Matrix& weights() const { return W_; }   // p x C
  const Vector& intercepts() const { return b_; }
  bool converged() const { return converged_; }
  int iterations() const { return iterations_; }

 private:
  LrConfig cfg_;
  Matrix W_;
  Vector b_;
  bool converged_ = false;
  int iterations_ = 0;
};

// Binary logistic model on labels {0, 1}; decision score w.x + b.
class BinaryLogistic {
 public:
  explicit BinaryLogistic(LrConfig cfg = {}) : cfg_(cfg) { cfg_.Validate(); }

  void Fit(const Matrix& X, const std::vector<int>& y01);
  Vector Decision(const Matrix& X) const;
  Vector Probability(const Matrix& X) const;  // sigmoid(decision)

  const Vector& weights() const { return w_; }
  double intercept() const { return b_; }
  bool converged() const { return converged_; }

  nlohmann::ordered_json State() const;
  void LoadState(const nlohmann::json& state);

 private:
  LrConfig cfg_;
  Vector w_;
  double b_ = 0.0;
  bool converged_ = false;
};

double Sigmoid(double z);

}  // namespace tabml

#endif  // TABML_LEARNERS_LOGISTIC_H_
