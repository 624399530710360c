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

#include "tabml/learners/registry.h"

#include <algorithm>

#include "tabml/errors.h"
#include "tabml/learners/decision_tree.h"
#include "tabml/learners/gradient_boosting.h"
#include "tabml/learners/group_lasso.h"
#include "tabml/learners/logistic.h"
#include "tabml/learners/one_vs_rest.h"
#include "tabml/learners/random_forest.h"

namespace tabml {
namespace {

TreeConfig TreeFromJson(const nlohmann::json& j) {
  TreeConfig cfg;
  std::vector<std::string> consumed;
  cfg.ReadJson(j, &consumed);
  for (const auto& [key, value] : j.items()) {
    if (std::find(consumed.begin(), consumed.end(), key) == consumed.end()) {
      throw ConfigError("unknown tree parameter '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace

const std::vector<std::string>& ClassifierFamilies() {
  static const std::vector<std::string> kFamilies = {"lr", "lasso", "tree", "forest", "gbt", "ovr"};
  return kFamilies;
}

std::unique_ptr<Classifier> MakeClassifier(const std::string& family, const nlohmann::json& params,
                                           uint64_t seed) {
  if (!params.is_null() && !params.is_object()) {
    throw ConfigError(family + " parameters must be a JSON object");
  }
  nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
  if (p.contains("seed")) {
    seed = p.at("seed").get<uint64_t>();
    p.erase("seed");
  }
  try {
    if (family == "lr") return std::make_unique<SoftmaxRegression>(LrConfig::FromJson(p));
    if (family == "ovr") return std::make_unique<OneVsRest>(LrConfig::FromJson(p));
    if (family == "lasso") {
      return std::make_unique<GroupLassoRegression>(LassoConfig::FromJson(p), seed);
    }
    if (family == "tree") return std::make_unique<DecisionTree>(TreeFromJson(p), seed);
    if (family == "forest") {
      return std::make_unique<RandomForest>(ForestConfig::FromJson(p), seed);
    }
    if (family == "gbt" || family == "xgboost") {
      return std::make_unique<GradientBoosting>(BoostConfig::FromJson(p), seed);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad " + family + " parameter value: " + e.what());
  }
  throw ConfigError("unknown learner family '" + family + "'");
}

}  // namespace tabml
