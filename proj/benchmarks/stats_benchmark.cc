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

#include <benchmark/benchmark.h>

#include "tabml/rng.h"
#include "tabml/stats.h"

namespace tabml {
namespace {

void BM_ChiSquareTest(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  Rng rng(1);
  std::vector<std::vector<int64_t>> o(side, std::vector<int64_t>(side));
  for (auto& row : o)
    for (auto& v : row) v = 1 + static_cast<int64_t>(rng.Uniform(10000));
  const ContingencyTable ct = ContingencyTable::FromCounts(o);
  for (auto _ : state) benchmark::DoNotOptimize(ChiSquareTest(ct));
}
BENCHMARK(BM_ChiSquareTest)->Arg(3)->Arg(9);

// Scoring every column of a dummy-encoded training matrix.
void BM_SelectKBest(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = 96;
  Rng rng(2);
  Eigen::MatrixXd X(n, p);
  std::vector<int> y(n);
  std::vector<std::string> names;
  for (int j = 0; j < p; ++j) names.push_back("f" + std::to_string(j));
  for (int i = 0; i < n; ++i) {
    y[i] = static_cast<int>(rng.Uniform(3));
    for (int j = 0; j < p; ++j) X(i, j) = rng.UniformDouble() < 0.3 ? 1.0 : 0.0;
  }
  const Scorer scorer = state.range(1) == 0 ? Scorer::kChi2 : Scorer::kChi2Occurrence;
  for (auto _ : state) benchmark::DoNotOptimize(SelectKBest(X, names, y, 3, scorer, 66));
  state.SetItemsProcessed(state.iterations() * n * p);
}
BENCHMARK(BM_SelectKBest)->Args({10000, 0})->Args({10000, 1})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tabml
