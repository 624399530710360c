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

#include "tabml/learners/binned.h"

#include <algorithm>

#include "tabml/errors.h"

namespace tabml {

BinnedFeatures BinnedFeatures::Build(const Matrix& X) {
  if (!X.allFinite()) throw DataError("X contains non-finite values");
  BinnedFeatures b;
  b.n = X.rows();
  b.p = X.cols();
  b.values.resize(b.p);
  b.bins.resize(b.p);
  for (Eigen::Index f = 0; f < b.p; ++f) {
    std::vector<double>& v = b.values[f];
    v.assign(X.col(f).data(), X.col(f).data() + b.n);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<uint32_t>& col = b.bins[f];
    col.resize(b.n);
    for (Eigen::Index i = 0; i < b.n; ++i) {
      col[i] = static_cast<uint32_t>(std::lower_bound(v.begin(), v.end(), X(i, f)) - v.begin());
    }
  }
  return b;
}

double BinnedFeatures::Threshold(Eigen::Index f, uint32_t lo, uint32_t hi) const {
  const double a = values[f][lo];
  const double b = values[f][hi];
  const double mid = a + (b - a) / 2.0;
  return mid < b ? mid : a;
}

}  // namespace tabml
