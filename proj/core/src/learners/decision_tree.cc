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

#include "tabml/learners/decision_tree.h"

#include <algorithm>
#include <cmath>

#include "tabml/errors.h"

namespace tabml {
namespace {

// Per-bin class weights and distinct-row counts for one feature at one node,
// listing only the bins that occur, in ascending order.
struct BinStats {
  std::vector<uint32_t> bin;
  std::vector<int> rows;
  std::vector<double> weight;  // bin.size() x C, row-major.
};

void CollectBins(const std::vector<uint32_t>& col, size_t n_bins, const std::vector<size_t>& rows,
                 const Labels& y, const std::vector<double>& w, int C, BinStats* out) {
  out->bin.clear();
  out->rows.clear();
  out->weight.clear();
  if (n_bins <= 2 * rows.size()) {
    std::vector<int> cnt(n_bins, 0);
    std::vector<double> hist(n_bins * C, 0.0);
    for (size_t r : rows) {
      const uint32_t b = col[r];
      ++cnt[b];
      hist[b * C + y[r]] += w[r];
    }
    for (size_t b = 0; b < n_bins; ++b) {
      if (cnt[b] == 0) continue;
      out->bin.push_back(static_cast<uint32_t>(b));
      out->rows.push_back(cnt[b]);
      out->weight.insert(out->weight.end(), hist.begin() + b * C, hist.begin() + (b + 1) * C);
    }
    return;
  }
  std::vector<size_t> order(rows);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return col[a] < col[b] || (col[a] == col[b] && a < b); });
  for (size_t r : order) {
    if (out->bin.empty() || out->bin.back() != col[r]) {
      out->bin.push_back(col[r]);
      out->rows.push_back(0);
      out->weight.resize(out->weight.size() + C, 0.0);
    }
    ++out->rows.back();
    out->weight[(out->bin.size() - 1) * C + y[r]] += w[r];
  }
}

// sum_c n_c^2 / n: larger means purer (Gini = 1 - this / n).
double Purity(const double* counts, int C) {
  double s = 0.0;
  double sq = 0.0;
  for (int c = 0; c < C; ++c) {
    s += counts[c];
    sq += counts[c] * counts[c];
  }
  return s > 0.0 ? sq / s : 0.0;
}

struct Frame {
  int node;
  int depth;
  std::vector<size_t> rows;
};

}  // namespace

int MaxFeatures::Resolve(int p) const {
  switch (kind) {
    case Kind::kAll:
      return p;
    case Kind::kSqrt:
      return std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(p)))));
    case Kind::kCount:
      return std::min(count, p);
  }
  return p;
}

nlohmann::ordered_json MaxFeatures::ToJson() const {
  switch (kind) {
    case Kind::kAll:
      return "all";
    case Kind::kSqrt:
      return "sqrt";
    case Kind::kCount:
      return count;
  }
  return "all";
}

MaxFeatures MaxFeatures::FromJson(const nlohmann::json& j) {
  MaxFeatures m;
  if (j.is_null() || j == "all") {
    m.kind = Kind::kAll;
  } else if (j == "sqrt") {
    m.kind = Kind::kSqrt;
  } else if (j.is_number_integer() && j.get<int>() >= 1) {
    m.kind = Kind::kCount;
    m.count = j.get<int>();
  } else {
    throw ConfigError("max_features must be \"all\", \"sqrt\" or a positive integer, got " +
                      j.dump());
  }
  return m;
}

void TreeConfig::Validate() const {
  if (max_depth && *max_depth < 1) throw ConfigError("max_depth must be at least 1");
  if (min_samples_split < 2) throw ConfigError("min_samples_split must be at least 2");
  if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be at least 1");
}

nlohmann::ordered_json TreeConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["max_depth"] = max_depth ? nlohmann::ordered_json(*max_depth) : nlohmann::ordered_json();
  j["min_samples_split"] = min_samples_split;
  j["min_samples_leaf"] = min_samples_leaf;
  j["max_features"] = max_features.ToJson();
  return j;
}

void TreeConfig::ReadJson(const nlohmann::json& j, std::vector<std::string>* consumed) {
  for (const auto& [key, value] : j.items()) {
    if (key == "max_depth") {
      if (value.is_null()) {
        max_depth.reset();
      } else {
        max_depth = value.get<int>();
      }
    } else if (key == "min_samples_split") {
      min_samples_split = value.get<int>();
    } else if (key == "min_samples_leaf") {
      min_samples_leaf = value.get<int>();
    } else if (key == "max_features") {
      max_features = MaxFeatures::FromJson(value);
    } else {
      continue;
    }
    consumed->push_back(key);
  }
  Validate();
}

void DecisionTree::Fit(const Matrix& X, const Labels& y) {
  const int C = CheckFitInputs(X, y);
  FitBinned(BinnedFeatures::Build(X), y, C, std::vector<double>(y.size(), 1.0));
}

void DecisionTree::FitBinned(const BinnedFeatures& bf, const Labels& y, int C,
                             const std::vector<double>& w) {
  if (static_cast<size_t>(bf.n) != y.size() || w.size() != y.size()) {
    throw DataError("tree inputs differ in length");
  }
  const int p = static_cast<int>(bf.p);
  const int k = cfg_.max_features.Resolve(p);
  Rng rng(seed_);
  nodes_.clear();
  nodes_.emplace_back();

  std::vector<Frame> stack;
  {
    Frame root{0, 0, {}};
    for (size_t i = 0; i < y.size(); ++i) {
      if (w[i] > 0.0) root.rows.push_back(i);
    }
    if (root.rows.empty()) throw DataError("tree has no rows with positive weight");
    stack.push_back(std::move(root));
  }
  std::vector<int> all_features(p);
  for (int f = 0; f < p; ++f) all_features[f] = f;
  BinStats stats;
  std::vector<double> left(C);
  std::vector<double> right(C);

  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    std::vector<double> counts(C, 0.0);
    for (size_t r : fr.rows) counts[y[r]] += w[r];
    double total = 0.0;
    int present = 0;
    for (double c : counts) {
      total += c;
      present += c > 0.0 ? 1 : 0;
    }
    {
      TreeNode& node = nodes_[fr.node];
      node.value = counts;
      for (double& v : node.value) v /= total;
    }
    const int n_rows = static_cast<int>(fr.rows.size());
    if ((cfg_.max_depth && fr.depth >= *cfg_.max_depth) || present < 2 ||
        n_rows < cfg_.min_samples_split || n_rows < 2 * cfg_.min_samples_leaf) {
      continue;
    }

    std::vector<int> candidates;
    if (k < p) {
      for (size_t f : rng.SampleWithoutReplacement(static_cast<size_t>(p), static_cast<size_t>(k))) {
        candidates.push_back(static_cast<int>(f));
      }
      std::sort(candidates.begin(), candidates.end());
    } else {
      candidates = all_features;
    }

    const double parent = Purity(counts.data(), C);
    double best_score = parent + 1e-12 * (1.0 + parent);
    int best_feature = -1;
    uint32_t best_lo = 0;
    uint32_t best_hi = 0;
    for (int f : candidates) {
      if (bf.n_bins(f) < 2) continue;
      CollectBins(bf.bins[f], bf.n_bins(f), fr.rows, y, w, C, &stats);
      std::fill(left.begin(), left.end(), 0.0);
      int left_rows = 0;
      for (size_t b = 0; b + 1 < stats.bin.size(); ++b) {
        left_rows += stats.rows[b];
        for (int c = 0; c < C; ++c) left[c] += stats.weight[b * C + c];
        const int right_rows = n_rows - left_rows;
        if (left_rows < cfg_.min_samples_leaf) continue;
        if (right_rows < cfg_.min_samples_leaf) break;
        for (int c = 0; c < C; ++c) right[c] = counts[c] - left[c];
        const double score = Purity(left.data(), C) + Purity(right.data(), C);
        if (score > best_score) {
          best_score = score;
          best_feature = f;
          best_lo = stats.bin[b];
          best_hi = stats.bin[b + 1];
        }
      }
    }
    if (best_feature < 0) continue;

    Frame lf{static_cast<int>(nodes_.size()), fr.depth + 1, {}};
    Frame rf{static_cast<int>(nodes_.size()) + 1, fr.depth + 1, {}};
    const auto& col = bf.bins[best_feature];
    for (size_t r : fr.rows) (col[r] <= best_lo ? lf.rows : rf.rows).push_back(r);
    TreeNode& node = nodes_[fr.node];
    node.feature = best_feature;
    node.threshold = bf.Threshold(best_feature, best_lo, best_hi);
    node.left = lf.node;
    node.right = rf.node;
    nodes_.emplace_back();
    nodes_.emplace_back();
    // Left subtree first, so node numbering is depth-first preorder-like and
    // the random stream is consumed in a fixed order.
    stack.push_back(std::move(rf));
    stack.push_back(std::move(lf));
  }
  SetShape(C, p);
}

int DecisionTree::Apply(const Matrix& X, Eigen::Index i) const {
  int n = 0;
  while (!nodes_[n].is_leaf()) {
    const TreeNode& node = nodes_[n];
    n = X(i, node.feature) <= node.threshold ? node.left : node.right;
  }
  return n;
}

Matrix DecisionTree::PredictProba(const Matrix& X) const {
  CheckPredictInput(X);
  Matrix P(X.rows(), n_classes());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const auto& v = nodes_[Apply(X, i)].value;
    for (int c = 0; c < n_classes(); ++c) P(i, c) = v[c];
  }
  return P;
}

int DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<int> d(nodes_.size(), 0);
  int best = 0;
  for (size_t n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].is_leaf()) continue;
    d[nodes_[n].left] = d[n] + 1;
    d[nodes_[n].right] = d[n] + 1;
    best = std::max(best, d[n] + 1);
  }
  return best;
}

int DecisionTree::n_leaves() const {
  int n = 0;
  for (const auto& node : nodes_) n += node.is_leaf() ? 1 : 0;
  return n;
}

nlohmann::ordered_json DecisionTree::Params() const {
  auto j = cfg_.ToJson();
  j["seed"] = seed_;
  return j;
}

nlohmann::ordered_json DecisionTree::State() const {
  nlohmann::ordered_json feature = nlohmann::ordered_json::array();
  nlohmann::ordered_json threshold = nlohmann::ordered_json::array();
  nlohmann::ordered_json left = nlohmann::ordered_json::array();
  nlohmann::ordered_json right = nlohmann::ordered_json::array();
  nlohmann::ordered_json value = nlohmann::ordered_json::array();
  for (const auto& n : nodes_) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.value);
  }
  nlohmann::ordered_json j;
  j["n_classes"] = n_classes();
  j["n_features"] = n_features();
  j["feature"] = std::move(feature);
  j["threshold"] = std::move(threshold);
  j["left"] = std::move(left);
  j["right"] = std::move(right);
  j["value"] = std::move(value);
  return j;
}

void DecisionTree::LoadState(const nlohmann::json& state) {
  const auto feature = state.at("feature").get<std::vector<int>>();
  const auto threshold = state.at("threshold").get<std::vector<double>>();
  const auto left = state.at("left").get<std::vector<int>>();
  const auto right = state.at("right").get<std::vector<int>>();
  const auto value = state.at("value").get<std::vector<std::vector<double>>>();
  const size_t m = feature.size();
  if (threshold.size() != m || left.size() != m || right.size() != m || value.size() != m ||
      m == 0) {
    throw ConfigError("malformed tree state");
  }
  const int C = state.at("n_classes").get<int>();
  const int p = state.at("n_features").get<int>();
  nodes_.assign(m, TreeNode{});
  for (size_t n = 0; n < m; ++n) {
    TreeNode& node = nodes_[n];
    node.feature = feature[n];
    node.threshold = threshold[n];
    node.left = left[n];
    node.right = right[n];
    node.value = value[n];
    if (static_cast<int>(node.value.size()) != C || node.feature >= p ||
        (!node.is_leaf() && (node.left <= static_cast<int>(n) || node.right <= static_cast<int>(n) ||
                             node.left >= static_cast<int>(m) || node.right >= static_cast<int>(m)))) {
      throw ConfigError("malformed tree node " + std::to_string(n));
    }
  }
  SetShape(C, p);
}

}  // namespace tabml
