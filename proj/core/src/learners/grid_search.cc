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

#include "tabml/learners/grid_search.h"

#include "tabml/errors.h"
#include "tabml/learners/registry.h"

namespace tabml {

Matrix SelectRows(const Matrix& X, const std::vector<size_t>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

Labels SelectLabels(const Labels& y, const std::vector<size_t>& rows) {
  Labels out(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) out[i] = y[rows[i]];
  return out;
}

std::vector<nlohmann::ordered_json> ExpandGrid(const nlohmann::ordered_json& grid,
                                               const nlohmann::ordered_json& base) {
  if (!grid.is_object() || grid.empty()) throw ConfigError("grid must be a non-empty object");
  if (!base.is_null() && !base.is_object()) throw ConfigError("base parameters must be an object");
  std::vector<std::string> keys;
  std::vector<const nlohmann::ordered_json*> values;
  for (const auto& [key, value] : grid.items()) {
    if (!value.is_array() || value.empty()) {
      throw ConfigError("grid entry '" + key + "' must be a non-empty array");
    }
    keys.push_back(key);
    values.push_back(&value);
  }
  std::vector<nlohmann::ordered_json> points;
  std::vector<size_t> idx(keys.size(), 0);
  while (true) {
    nlohmann::ordered_json p = base.is_null() ? nlohmann::ordered_json::object() : base;
    for (size_t k = 0; k < keys.size(); ++k) p[keys[k]] = (*values[k])[idx[k]];
    points.push_back(std::move(p));
    size_t k = keys.size();
    while (k > 0) {
      --k;
      if (++idx[k] < values[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return points;
    }
  }
}

std::vector<double> CrossValidate(const std::string& family, const nlohmann::json& params,
                                  const FoldPlan& folds, const Matrix& X, const Labels& y,
                                  uint64_t seed) {
  if (folds.n != y.size()) throw ConfigError("fold plan does not match the training rows");
  std::vector<double> scores;
  for (int f = 0; f < folds.k; ++f) {
    const auto train = folds.TrainIndices(f);
    const auto& val = folds.folds[f];
    auto model = MakeClassifier(family, params, seed);
    model->Fit(SelectRows(X, train), SelectLabels(y, train));
    const Labels pred = model->Predict(SelectRows(X, val));
    size_t hit = 0;
    for (size_t i = 0; i < val.size(); ++i) hit += pred[i] == y[val[i]] ? 1 : 0;
    scores.push_back(static_cast<double>(hit) / static_cast<double>(val.size()));
  }
  return scores;
}

nlohmann::ordered_json GridSearchReport::ToJson() const {
  nlohmann::ordered_json j;
  j["family"] = family;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    j["points"].push_back(
        {{"params", p.params}, {"fold_scores", p.fold_scores}, {"mean_score", p.mean_score}});
  }
  j["best_index"] = best_index;
  j["best_params"] = best_params();
  j["best_score"] = best_score();
  return j;
}

GridSearchReport GridSearchCV(const std::string& family, const nlohmann::ordered_json& grid,
                              const nlohmann::ordered_json& base, const FoldPlan& folds,
                              const Matrix& X, const Labels& y, uint64_t seed) {
  GridSearchReport report;
  report.family = family;
  for (auto& params : ExpandGrid(grid, base)) {
    GridPoint point;
    const std::string where = " [" + family + " " + params.dump() + "]";
    try {
      point.fold_scores = CrossValidate(family, params, folds, X, y, seed);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what() + where);
    } catch (const DataError& e) {
      throw DataError(e.what() + where);
    } catch (const NumericError& e) {
      throw NumericError(e.what() + where);
    }
    double sum = 0.0;
    for (double s : point.fold_scores) sum += s;
    point.mean_score = sum / static_cast<double>(point.fold_scores.size());
    point.params = std::move(params);
    report.points.push_back(std::move(point));
    if (report.points.back().mean_score > report.points[report.best_index].mean_score) {
      report.best_index = report.points.size() - 1;
    }
  }
  return report;
}

}  // namespace tabml
