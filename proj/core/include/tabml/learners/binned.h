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

// Per-feature discretisation onto the sorted distinct training values. Tree
// learners search splits over bin boundaries and store real thresholds, so
// fitted trees predict directly on raw feature matrices.

#ifndef TABML_LEARNERS_BINNED_H_
#define TABML_LEARNERS_BINNED_H_

#include <cstdint>
#include <vector>

#include "tabml/learners/model.h"

namespace tabml {

struct BinnedFeatures {
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  std::vector<std::vector<double>> values;  // Sorted distinct values per feature.
  std::vector<std::vector<uint32_t>> bins;  // [feature][row] index into values.

  static BinnedFeatures Build(const Matrix& X);

  size_t n_bins(Eigen::Index f) const { return values[f].size(); }
  // Split point between bins lo < hi: rows with x <= threshold go left.
  // The midpoint, or the lower value when rounding puts the midpoint on the
  // upper one.
  double Threshold(Eigen::Index f, uint32_t lo, uint32_t hi) const;
};

}  // namespace tabml

#endif  // TABML_LEARNERS_BINNED_H_
