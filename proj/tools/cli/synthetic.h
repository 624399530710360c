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

// Synthetic cohort with the raw 70-column schema (68 predictors plus the two
// death-horizon labels). Values cover every bin of the preset so the full
// pipeline, including the dummy drop list, runs on it; the mortality band
// depends on age, admissions, creatinine, priority and a few flags so the
// learners have signal to find. Roughly 2% of the rows are exact duplicates.

#ifndef TABML_TOOLS_CLI_SYNTHETIC_H_
#define TABML_TOOLS_CLI_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tabml/table.h"

namespace tabml::cli {

// Raw predictor names in file order.
const std::vector<std::string>& CohortPredictorNames();

Table MakeSyntheticCohort(size_t n_rows, uint64_t seed);

}  // namespace tabml::cli

#endif  // TABML_TOOLS_CLI_SYNTHETIC_H_
