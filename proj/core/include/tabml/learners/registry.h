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

// Learner factory keyed by family name.
//
//   lr      SoftmaxRegression   (LrConfig keys)
//   lasso   GroupLassoRegression (LassoConfig keys)
//   tree    DecisionTree        (TreeConfig keys)
//   forest  RandomForest        (ForestConfig keys)
//   gbt     GradientBoosting    (BoostConfig keys; "xgboost" is an alias)
//   ovr     OneVsRest           (LrConfig keys)
//
// Every family also accepts "seed", which overrides the seed argument.
// Unknown keys raise ConfigError.

#ifndef TABML_LEARNERS_REGISTRY_H_
#define TABML_LEARNERS_REGISTRY_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tabml/learners/model.h"

namespace tabml {

std::unique_ptr<Classifier> MakeClassifier(const std::string& family, const nlohmann::json& params,
                                           uint64_t seed);

// Canonical family names.
const std::vector<std::string>& ClassifierFamilies();

}  // namespace tabml

#endif  // TABML_LEARNERS_REGISTRY_H_
