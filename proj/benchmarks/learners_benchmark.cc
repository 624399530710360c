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

#include "tabml/learners/decision_tree.h"
#include "tabml/learners/logistic.h"
#include "tabml/rng.h"

namespace tabml {
namespace {

struct Data {
  Matrix X;
  Labels y;
};

Data MakeData(int n, int p) {
  Rng rng(3);
  Data d{Matrix(n, p), Labels(n)};
  for (int i = 0; i < n; ++i) {
    d.y[i] = static_cast<int>(rng.Uniform(3));
    for (int j = 0; j < p; ++j) {
      d.X(i, j) = (rng.UniformDouble() < 0.25 + 0.1 * (d.y[i] == j % 3)) ? 1.0 : 0.0;
    }
  }
  return d;
}

void BM_SoftmaxGradient(benchmark::State& state) {
  const Data d = MakeData(static_cast<int>(state.range(0)), 96);
  const SoftmaxLoss loss(d.X, d.y, 3, Vector::Ones(d.X.rows()), 1.0);
  const Vector theta = Vector::Constant(loss.dim(), 0.01);
  Vector grad;
  for (auto _ : state) benchmark::DoNotOptimize(loss.ValueAndGradient(theta, &grad));
  state.SetItemsProcessed(state.iterations() * d.X.size());
}
BENCHMARK(BM_SoftmaxGradient)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TreeFit(benchmark::State& state) {
  const Data d = MakeData(static_cast<int>(state.range(0)), 96);
  TreeConfig cfg;
  cfg.max_depth = 10;
  cfg.min_samples_leaf = 4;
  cfg.max_features.kind = MaxFeatures::Kind::kSqrt;
  for (auto _ : state) {
    DecisionTree t(cfg, 1);
    t.Fit(d.X, d.y);
    benchmark::DoNotOptimize(t.n_leaves());
  }
}
BENCHMARK(BM_TreeFit)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tabml
