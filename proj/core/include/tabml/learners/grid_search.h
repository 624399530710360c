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

// Exhaustive grid search with k-fold cross-validation. Points enumerate the
// Cartesian product row-major over the grid's key order (first key slowest);
// each point's score is the mean validation accuracy over the folds and the
// best point is the first one reaching the maximum.

#ifndef TABML_LEARNERS_GRID_SEARCH_H_
#define TABML_LEARNERS_GRID_SEARCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tabml/learners/model.h"
#include "tabml/sampling.h"

namespace tabml {

Matrix SelectRows(const Matrix& X, const std::vector<size_t>& rows);
Labels SelectLabels(const Labels& y, const std::vector<size_t>& rows);

// Cartesian product of `grid` (key -> non-empty array) merged over `base`.
std::vector<nlohmann::ordered_json> ExpandGrid(const nlohmann::ordered_json& grid,
                                               const nlohmann::ordered_json& base);

// Validation accuracy per fold for one parameter point.
std::vector<double> CrossValidate(const std::string& family, const nlohmann::json& params,
                                  const FoldPlan& folds, const Matrix& X, const Labels& y,
                                  uint64_t seed);

struct GridPoint {
  nlohmann::ordered_json params;
  std::vector<double> fold_scores;
  double mean_score = 0.0;
};

struct GridSearchReport {
  std::string family;
  std::vector<GridPoint> points;
  size_t best_index = 0;

  const nlohmann::ordered_json& best_params() const { return points[best_index].params; }
  double best_score() const { return points[best_index].mean_score; }
  nlohmann::ordered_json ToJson() const;
};

// Fit failures are rethrown as the same error type with the point attached.
GridSearchReport GridSearchCV(const std::string& family, const nlohmann::ordered_json& grid,
                              const nlohmann::ordered_json& base, const FoldPlan& folds,
                              const Matrix& X, const Labels& y, uint64_t seed);

}  // namespace tabml

#endif  // TABML_LEARNERS_GRID_SEARCH_H_
