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

#include "tabml/learners/random_forest.h"

#include <algorithm>

#include "tabml/errors.h"
#include "tabml/rng.h"

namespace tabml {
namespace {

constexpr uint64_t kBootstrapStream = 0xB0075784;

}  // namespace

void ForestConfig::Validate() const {
  if (n_estimators < 1) throw ConfigError("n_estimators must be at least 1");
  tree.Validate();
}

nlohmann::ordered_json ForestConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["n_estimators"] = n_estimators;
  j["bootstrap"] = bootstrap;
  const nlohmann::ordered_json tree_json = tree.ToJson();
  for (const auto& [key, value] : tree_json.items()) j[key] = value;
  return j;
}

ForestConfig ForestConfig::FromJson(const nlohmann::json& j) {
  ForestConfig cfg;
  std::vector<std::string> consumed;
  cfg.tree.ReadJson(j, &consumed);
  for (const auto& [key, value] : j.items()) {
    if (key == "n_estimators") {
      cfg.n_estimators = value.get<int>();
    } else if (key == "bootstrap") {
      cfg.bootstrap = value.get<bool>();
    } else if (std::find(consumed.begin(), consumed.end(), key) == consumed.end()) {
      throw ConfigError("unknown forest parameter '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

void RandomForest::Fit(const Matrix& X, const Labels& y) {
  const int C = CheckFitInputs(X, y);
  const BinnedFeatures bf = BinnedFeatures::Build(X);
  const size_t n = y.size();
  trees_.clear();
  trees_.reserve(cfg_.n_estimators);
  std::vector<double> w(n);
  for (int t = 0; t < cfg_.n_estimators; ++t) {
    const uint64_t tree_seed = DeriveSeed(seed_, static_cast<uint64_t>(t));
    if (cfg_.bootstrap) {
      std::fill(w.begin(), w.end(), 0.0);
      Rng rng(DeriveSeed(tree_seed, kBootstrapStream));
      for (size_t i = 0; i < n; ++i) w[rng.Uniform(n)] += 1.0;
    } else {
      std::fill(w.begin(), w.end(), 1.0);
    }
    DecisionTree tree(cfg_.tree, tree_seed);
    tree.FitBinned(bf, y, C, w);
    trees_.push_back(std::move(tree));
  }
  SetShape(C, static_cast<int>(X.cols()));
}

Matrix RandomForest::PredictProba(const Matrix& X) const {
  CheckPredictInput(X);
  Matrix P = Matrix::Zero(X.rows(), n_classes());
  for (const auto& tree : trees_) P += tree.PredictProba(X);
  return P / static_cast<double>(trees_.size());
}

Labels RandomForest::Predict(const Matrix& X) const {
  CheckPredictInput(X);
  Matrix votes = Matrix::Zero(X.rows(), n_classes());
  for (const auto& tree : trees_) {
    const Labels pred = tree.Predict(X);
    for (Eigen::Index i = 0; i < X.rows(); ++i) votes(i, pred[i]) += 1.0;
  }
  return ArgmaxRows(votes);
}

nlohmann::ordered_json RandomForest::Params() const {
  auto j = cfg_.ToJson();
  j["seed"] = seed_;
  return j;
}

nlohmann::ordered_json RandomForest::State() const {
  nlohmann::ordered_json trees = nlohmann::ordered_json::array();
  for (const auto& t : trees_) trees.push_back(t.State());
  nlohmann::ordered_json j;
  j["trees"] = std::move(trees);
  return j;
}

void RandomForest::LoadState(const nlohmann::json& state) {
  trees_.clear();
  for (const auto& t : state.at("trees")) {
    DecisionTree tree(cfg_.tree, 0);
    tree.LoadState(t);
    trees_.push_back(std::move(tree));
  }
  if (trees_.empty()) throw ConfigError("forest state holds no trees");
  SetShape(trees_[0].n_classes(), trees_[0].n_features());
}

}  // namespace tabml
