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

// Multinomial logistic regression with a grouped lasso penalty:
//   (1/N) sum_i loss_i + lambda * sum_j ||W_j||_2
// where W_j is feature j's coefficient row across all classes, so a feature
// enters or leaves the model for every class at once. Solved per lambda by
// FISTA (proximal gradient with block soft-thresholding, backtracking and
// adaptive restart), warm-started down a decreasing lambda path. Features
// are standardised internally by default; coefficients are reported on the
// original scale.

#ifndef TABML_LEARNERS_GROUP_LASSO_H_
#define TABML_LEARNERS_GROUP_LASSO_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "tabml/learners/model.h"
#include "tabml/sampling.h"

namespace tabml {

enum class LambdaRule { kMinError, kOneStandardError };

struct LassoConfig {
  std::optional<double> lambda;      // Fixed lambda; nullopt selects by CV.
  std::vector<double> lambda_path;   // Explicit decreasing path; empty = auto.
  int n_lambda = 100;
  double lambda_min_ratio = 1e-4;
  bool standardize = true;
  int max_iter = 1000;  // FISTA iterations per lambda.
  double tol = 1e-5;    // Max-abs parameter change.
  int cv_folds = 10;
  // An automatic path stops early once the deviance ratio gains less than
  // this fraction of itself between consecutive lambdas, or exceeds 0.999.
  // 0 fits the whole path.
  double dev_ratio_tol = 1e-5;
  LambdaRule rule = LambdaRule::kMinError;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
  static LassoConfig FromJson(const nlohmann::json& j);
};

struct LassoPathPoint {
  double lambda = 0.0;
  int nonzero = 0;           // Full-data fit.
  double cv_error = 0.0;     // Mean validation misclassification rate.
  double cv_se = 0.0;        // Its standard error across folds.
};

struct LassoFit {
  Matrix W;  // p x C, original feature scale.
  Vector b;
  int iterations = 0;
  bool converged = false;
  int nonzero() const;
};

// Smallest lambda for which every coefficient block is zero (at the
// intercept-only optimum), on the (optionally standardised) features.
double GroupLassoLambdaMax(const Matrix& X, const Labels& y, int n_classes, bool standardize);

// n log-spaced values from lambda_max down to ratio * lambda_max.
std::vector<double> MakeLambdaPath(double lambda_max, int n, double ratio);

// Fits every lambda of a decreasing path with warm starts. The path is
// never truncated here.
std::vector<LassoFit> FitGroupLassoPath(const Matrix& X, const Labels& y, int n_classes,
                                        const std::vector<double>& lambdas,
                                        const LassoConfig& cfg);

class GroupLassoRegression : public Classifier {
 public:
  explicit GroupLassoRegression(LassoConfig cfg = {}, uint64_t seed = 0)
      : cfg_(std::move(cfg)), seed_(seed) {
    cfg_.Validate();
  }

  std::string family() const override { return "lasso"; }
  // Fixed lambda: single fit. Otherwise CV over StratifiedKFold(cv_folds, seed).
  void Fit(const Matrix& X, const Labels& y) override;
  // Chooses lambda by mean CV misclassification over `folds`; ties go to the
  // larger lambda. The full-data fit fixes the path (including any early
  // stop) and every fold refits exactly that path; folds run concurrently.
  void FitWithFolds(const Matrix& X, const Labels& y, const FoldPlan& folds);

  Matrix PredictProba(const Matrix& X) const override;
  Matrix DecisionScores(const Matrix& X) const override;

  nlohmann::ordered_json Params() const override;
  nlohmann::ordered_json State() const override;
  void LoadState(const nlohmann::json& state) override;

  double lambda() const { return lambda_; }
  const std::vector<LassoPathPoint>& path() const { return path_; }
  // Indices of features with a nonzero coefficient block, ascending.
  std::vector<int> nonzero_features() const;
  const Matrix& weights() const { return W_; }
  const Vector& intercepts() const { return b_; }

 private:
  LassoConfig cfg_;
  uint64_t seed_;
  Matrix W_;
  Vector b_;
  double lambda_ = 0.0;
  std::vector<LassoPathPoint> path_;
};

}  // namespace tabml

#endif  // TABML_LEARNERS_GROUP_LASSO_H_
