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

// Stratified holdout, random under-sampling and stratified k-fold plans.
// All functions are pure in (labels, parameters, seed).

#ifndef TABML_SAMPLING_H_
#define TABML_SAMPLING_H_

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

namespace tabml {

struct SplitResult {
  std::vector<size_t> train;  // Ascending.
  std::vector<size_t> test;   // Ascending.

  nlohmann::ordered_json ToJson() const;
  static SplitResult FromJson(const nlohmann::json& j);
};

// Per-class test counts for a stratified split of class counts `counts`.
// The test total is ceil(N * fraction); each class gets floor(n_c * fraction)
// and the remaining slots go to the largest fractional parts (ties to the
// lower class code).
std::vector<size_t> StratifiedTestCounts(const std::vector<size_t>& counts, double fraction);

// Class codes must be in [0, C). Throws ConfigError unless 0 < fraction < 1
// and every present class has at least two members.
SplitResult StratifiedSplit(const std::vector<int>& y, double test_fraction, uint64_t seed);

// Keeps min-class-count members of every class, drawn uniformly without
// replacement. Returns ascending row indices.
std::vector<size_t> RandomUnderSample(const std::vector<int>& y, uint64_t seed);

struct FoldPlan {
  int k = 0;
  uint64_t seed = 0;
  bool shuffle = true;
  size_t n = 0;
  std::vector<std::vector<size_t>> folds;  // Validation rows, ascending.

  // Every row outside fold `f`, ascending.
  std::vector<size_t> TrainIndices(int f) const;

  nlohmann::ordered_json ToJson() const;
  static FoldPlan FromJson(const nlohmann::json& j);
};

// Per class, members are shuffled (when `shuffle`) and dealt round-robin to
// folds, continuing the deal position across classes so overall fold sizes
// also differ by at most one.
FoldPlan StratifiedKFold(const std::vector<int>& y, int k, uint64_t seed, bool shuffle = true);

// Rows of each class, in ascending order. Index = class code.
std::vector<std::vector<size_t>> RowsByClass(const std::vector<int>& y);

}  // namespace tabml

#endif  // TABML_SAMPLING_H_
