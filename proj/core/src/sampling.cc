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

#include "tabml/sampling.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tabml/errors.h"
#include "tabml/rng.h"

namespace tabml {

std::vector<std::vector<size_t>> RowsByClass(const std::vector<int>& y) {
  int n_classes = 0;
  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] < 0) throw ConfigError("negative class code at row " + std::to_string(i));
    n_classes = std::max(n_classes, y[i] + 1);
  }
  std::vector<std::vector<size_t>> rows(n_classes);
  for (size_t i = 0; i < y.size(); ++i) rows[y[i]].push_back(i);
  return rows;
}

std::vector<size_t> StratifiedTestCounts(const std::vector<size_t>& counts, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("test fraction must lie strictly between 0 and 1");
  }
  const size_t n = std::accumulate(counts.begin(), counts.end(), size_t{0});
  // The epsilon keeps products like 0.1 * 30 = 3.0000000000000004 at 3.
  const size_t n_test = static_cast<size_t>(std::ceil(static_cast<double>(n) * fraction - 1e-9));
  std::vector<size_t> out(counts.size());
  std::vector<double> remainder(counts.size());
  size_t assigned = 0;
  for (size_t c = 0; c < counts.size(); ++c) {
    const double exact = static_cast<double>(counts[c]) * fraction;
    out[c] = static_cast<size_t>(std::floor(exact));
    remainder[c] = exact - std::floor(exact);
    assigned += out[c];
  }
  std::vector<size_t> order(counts.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return remainder[a] > remainder[b]; });
  for (size_t r = 0; assigned < n_test && r < order.size(); ++r) {
    if (out[order[r]] < counts[order[r]]) {
      ++out[order[r]];
      ++assigned;
    }
  }
  return out;
}

SplitResult StratifiedSplit(const std::vector<int>& y, double test_fraction, uint64_t seed) {
  auto rows = RowsByClass(y);
  std::vector<size_t> counts;
  for (size_t c = 0; c < rows.size(); ++c) {
    if (rows[c].size() == 1) {
      throw ConfigError("class " + std::to_string(c) + " has a single member; cannot stratify");
    }
    counts.push_back(rows[c].size());
  }
  const auto n_test = StratifiedTestCounts(counts, test_fraction);
  Rng rng(seed);
  SplitResult out;
  std::vector<char> is_test(y.size(), 0);
  for (size_t c = 0; c < rows.size(); ++c) {
    rng.Shuffle(&rows[c]);
    for (size_t i = 0; i < n_test[c]; ++i) is_test[rows[c][i]] = 1;
  }
  for (size_t i = 0; i < y.size(); ++i) (is_test[i] ? out.test : out.train).push_back(i);
  return out;
}

nlohmann::ordered_json SplitResult::ToJson() const {
  nlohmann::ordered_json j;
  j["train"] = train;
  j["test"] = test;
  return j;
}

SplitResult SplitResult::FromJson(const nlohmann::json& j) {
  SplitResult s;
  s.train = j.at("train").get<std::vector<size_t>>();
  s.test = j.at("test").get<std::vector<size_t>>();
  return s;
}

std::vector<size_t> RandomUnderSample(const std::vector<int>& y, uint64_t seed) {
  const auto rows = RowsByClass(y);
  size_t present = 0;
  size_t m = y.size();
  for (const auto& r : rows) {
    if (r.empty()) continue;
    ++present;
    m = std::min(m, r.size());
  }
  if (present < 2) throw ConfigError("under-sampling needs at least two classes");
  Rng rng(seed);
  std::vector<size_t> kept;
  for (const auto& r : rows) {
    if (r.empty()) continue;
    if (r.size() == m) {
      kept.insert(kept.end(), r.begin(), r.end());
      continue;
    }
    for (size_t pos : rng.SampleWithoutReplacement(r.size(), m)) kept.push_back(r[pos]);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<size_t> FoldPlan::TrainIndices(int f) const {
  std::vector<char> held(n, 0);
  for (size_t i : folds.at(f)) held[i] = 1;
  std::vector<size_t> out;
  out.reserve(n - folds[f].size());
  for (size_t i = 0; i < n; ++i) {
    if (!held[i]) out.push_back(i);
  }
  return out;
}

nlohmann::ordered_json FoldPlan::ToJson() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["seed"] = seed;
  j["shuffle"] = shuffle;
  j["n"] = n;
  j["folds"] = folds;
  return j;
}

FoldPlan FoldPlan::FromJson(const nlohmann::json& j) {
  FoldPlan p;
  p.k = j.at("k").get<int>();
  p.seed = j.at("seed").get<uint64_t>();
  p.shuffle = j.value("shuffle", true);
  p.n = j.at("n").get<size_t>();
  p.folds = j.at("folds").get<std::vector<std::vector<size_t>>>();
  return p;
}

FoldPlan StratifiedKFold(const std::vector<int>& y, int k, uint64_t seed, bool shuffle) {
  if (k < 2) throw ConfigError("k-fold needs k >= 2");
  auto rows = RowsByClass(y);
  for (size_t c = 0; c < rows.size(); ++c) {
    if (!rows[c].empty() && rows[c].size() < static_cast<size_t>(k)) {
      throw ConfigError("class " + std::to_string(c) + " has " + std::to_string(rows[c].size()) +
                        " members, fewer than k = " + std::to_string(k));
    }
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.shuffle = shuffle;
  plan.n = y.size();
  plan.folds.assign(k, {});
  Rng rng(seed);
  size_t position = 0;
  for (auto& r : rows) {
    if (shuffle) rng.Shuffle(&r);
    for (size_t idx : r) plan.folds[position++ % k].push_back(idx);
  }
  for (auto& f : plan.folds) std::sort(f.begin(), f.end());
  return plan;
}

}  // namespace tabml
