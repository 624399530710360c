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

#include "tabml/learners/gradient_boosting.h"

#include <algorithm>
#include <cmath>

#include "tabml/errors.h"
#include "tabml/learners/binned.h"
#include "tabml/rng.h"

namespace tabml {
namespace {

struct GradBins {
  std::vector<uint32_t> bin;
  std::vector<double> g;
  std::vector<double> h;
};

void CollectGradBins(const std::vector<uint32_t>& col, size_t n_bins,
                     const std::vector<size_t>& rows, const Vector& g, const Vector& h,
                     GradBins* out) {
  out->bin.clear();
  out->g.clear();
  out->h.clear();
  if (n_bins <= 2 * rows.size()) {
    std::vector<double> hg(n_bins, 0.0);
    std::vector<double> hh(n_bins, 0.0);
    std::vector<char> seen(n_bins, 0);
    for (size_t r : rows) {
      hg[col[r]] += g[r];
      hh[col[r]] += h[r];
      seen[col[r]] = 1;
    }
    for (size_t b = 0; b < n_bins; ++b) {
      if (!seen[b]) continue;
      out->bin.push_back(static_cast<uint32_t>(b));
      out->g.push_back(hg[b]);
      out->h.push_back(hh[b]);
    }
    return;
  }
  std::vector<size_t> order(rows);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return col[a] < col[b] || (col[a] == col[b] && a < b); });
  for (size_t r : order) {
    if (out->bin.empty() || out->bin.back() != col[r]) {
      out->bin.push_back(col[r]);
      out->g.push_back(0.0);
      out->h.push_back(0.0);
    }
    out->g.back() += g[r];
    out->h.back() += h[r];
  }
}

struct Frame {
  int node;
  int depth;
  std::vector<size_t> rows;
};

// Grows one regression tree and adds its output to F(:, k) for the rows.
RegressionTree GrowTree(const BinnedFeatures& bf, const std::vector<int>& features,
                        const Vector& g, const Vector& h, const BoostConfig& cfg, Matrix* F,
                        int k) {
  const double lambda = cfg.reg_lambda;
  auto score = [lambda](double G, double H) { return G * G / (H + lambda); };
  RegressionTree tree(1);
  std::vector<Frame> stack;
  {
    Frame root{0, 0, std::vector<size_t>(static_cast<size_t>(bf.n))};
    for (size_t i = 0; i < root.rows.size(); ++i) root.rows[i] = i;
    stack.push_back(std::move(root));
  }
  GradBins bins;
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    double G = 0.0;
    double H = 0.0;
    for (size_t r : fr.rows) {
      G += g[r];
      H += h[r];
    }
    int best_feature = -1;
    uint32_t best_lo = 0;
    uint32_t best_hi = 0;
    if (fr.depth < cfg.max_depth && fr.rows.size() >= 2) {
      const double parent = score(G, H);
      double best_gain = 1e-12 * (1.0 + parent);
      for (int f : features) {
        if (bf.n_bins(f) < 2) continue;
        CollectGradBins(bf.bins[f], bf.n_bins(f), fr.rows, g, h, &bins);
        double GL = 0.0;
        double HL = 0.0;
        for (size_t b = 0; b + 1 < bins.bin.size(); ++b) {
          GL += bins.g[b];
          HL += bins.h[b];
          const double HR = H - HL;
          if (HL < cfg.min_child_weight || HR < cfg.min_child_weight) continue;
          const double gain = score(GL, HL) + score(G - GL, HR) - parent;
          if (gain > best_gain) {
            best_gain = gain;
            best_feature = f;
            best_lo = bins.bin[b];
            best_hi = bins.bin[b + 1];
          }
        }
      }
    }
    if (best_feature < 0) {
      const double v = -cfg.learning_rate * G / (H + lambda);
      tree[fr.node].value = v;
      for (size_t r : fr.rows) (*F)(static_cast<Eigen::Index>(r), k) += v;
      continue;
    }
    Frame lf{static_cast<int>(tree.size()), fr.depth + 1, {}};
    Frame rf{static_cast<int>(tree.size()) + 1, fr.depth + 1, {}};
    const auto& col = bf.bins[best_feature];
    for (size_t r : fr.rows) (col[r] <= best_lo ? lf.rows : rf.rows).push_back(r);
    RegressionNode& node = tree[fr.node];
    node.feature = best_feature;
    node.threshold = bf.Threshold(best_feature, best_lo, best_hi);
    node.left = lf.node;
    node.right = rf.node;
    tree.emplace_back();
    tree.emplace_back();
    stack.push_back(std::move(rf));
    stack.push_back(std::move(lf));
  }
  return tree;
}

double TreeOutput(const RegressionTree& tree, const Matrix& X, Eigen::Index i) {
  int n = 0;
  while (tree[n].feature >= 0) {
    n = X(i, tree[n].feature) <= tree[n].threshold ? tree[n].left : tree[n].right;
  }
  return tree[n].value;
}

}  // namespace

void BoostConfig::Validate() const {
  if (!(learning_rate >= 0.0)) throw ConfigError("learning_rate must be non-negative");
  if (n_estimators < 1) throw ConfigError("n_estimators must be at least 1");
  if (!(colsample_bytree > 0.0 && colsample_bytree <= 1.0)) {
    throw ConfigError("colsample_bytree must lie in (0, 1]");
  }
  if (max_depth < 1) throw ConfigError("max_depth must be at least 1");
  if (!(reg_lambda > 0.0)) throw ConfigError("reg_lambda must be positive");
  if (!(min_child_weight >= 0.0)) throw ConfigError("min_child_weight must be non-negative");
}

nlohmann::ordered_json BoostConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["learning_rate"] = learning_rate;
  j["n_estimators"] = n_estimators;
  j["colsample_bytree"] = colsample_bytree;
  j["max_depth"] = max_depth;
  j["reg_lambda"] = reg_lambda;
  j["min_child_weight"] = min_child_weight;
  return j;
}

BoostConfig BoostConfig::FromJson(const nlohmann::json& j) {
  BoostConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "learning_rate") {
      cfg.learning_rate = value.get<double>();
    } else if (key == "n_estimators") {
      cfg.n_estimators = value.get<int>();
    } else if (key == "colsample_bytree") {
      cfg.colsample_bytree = value.get<double>();
    } else if (key == "max_depth") {
      cfg.max_depth = value.get<int>();
    } else if (key == "reg_lambda") {
      cfg.reg_lambda = value.get<double>();
    } else if (key == "min_child_weight") {
      cfg.min_child_weight = value.get<double>();
    } else {
      throw ConfigError("unknown boosting parameter '" + key + "'");
    }
  }
  cfg.Validate();
  return cfg;
}

void GradientBoosting::Fit(const Matrix& X, const Labels& y) {
  const int C = CheckFitInputs(X, y);
  const BinnedFeatures bf = BinnedFeatures::Build(X);
  const Eigen::Index n = X.rows();
  const int p = static_cast<int>(X.cols());
  base_ = Vector::Zero(C);
  for (int v : y) base_[v] += 1.0;
  for (int c = 0; c < C; ++c) base_[c] = std::log(base_[c] / static_cast<double>(n));
  Matrix F(n, C);
  F.rowwise() = base_.transpose();
  trees_.clear();
  train_loss_.clear();
  const int n_cols = std::max(1, static_cast<int>(std::ceil(cfg_.colsample_bytree * p - 1e-9)));
  Vector g(n);
  Vector h(n);
  for (int round = 0; round < cfg_.n_estimators; ++round) {
    std::vector<int> features;
    if (n_cols < p) {
      Rng rng(DeriveSeed(seed_, static_cast<uint64_t>(round)));
      for (size_t f : rng.SampleWithoutReplacement(static_cast<size_t>(p), static_cast<size_t>(n_cols))) {
        features.push_back(static_cast<int>(f));
      }
      std::sort(features.begin(), features.end());
    } else {
      features.resize(p);
      for (int f = 0; f < p; ++f) features[f] = f;
    }
    const Matrix P = SoftmaxRows(F);
    for (int k = 0; k < C; ++k) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double pk = P(i, k);
        g[i] = pk - (y[i] == k ? 1.0 : 0.0);
        h[i] = std::max(pk * (1.0 - pk), 1e-16);
      }
      trees_.push_back(GrowTree(bf, features, g, h, cfg_, &F, k));
    }
    const Matrix Pn = SoftmaxRows(F);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) loss -= std::log(std::max(Pn(i, y[i]), 1e-300));
    train_loss_.push_back(loss / static_cast<double>(n));
  }
  SetShape(C, p);
}

Matrix GradientBoosting::DecisionScores(const Matrix& X) const {
  CheckPredictInput(X);
  const int C = n_classes();
  Matrix F(X.rows(), C);
  F.rowwise() = base_.transpose();
  for (size_t t = 0; t < trees_.size(); ++t) {
    const int k = static_cast<int>(t % C);
    for (Eigen::Index i = 0; i < X.rows(); ++i) F(i, k) += TreeOutput(trees_[t], X, i);
  }
  return F;
}

Matrix GradientBoosting::PredictProba(const Matrix& X) const {
  return SoftmaxRows(DecisionScores(X));
}

nlohmann::ordered_json GradientBoosting::Params() const {
  auto j = cfg_.ToJson();
  j["seed"] = seed_;
  return j;
}

nlohmann::ordered_json GradientBoosting::State() const {
  nlohmann::ordered_json j;
  j["n_features"] = n_features();
  j["base_score"] = std::vector<double>(base_.data(), base_.data() + base_.size());
  nlohmann::ordered_json trees = nlohmann::ordered_json::array();
  for (const auto& tree : trees_) {
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& n : tree) t.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    trees.push_back(std::move(t));
  }
  j["trees"] = std::move(trees);
  j["train_loss"] = train_loss_;
  return j;
}

void GradientBoosting::LoadState(const nlohmann::json& state) {
  const auto base = state.at("base_score").get<std::vector<double>>();
  base_ = Eigen::Map<const Vector>(base.data(), static_cast<Eigen::Index>(base.size()));
  const int C = static_cast<int>(base_.size());
  const int p = state.at("n_features").get<int>();
  trees_.clear();
  for (const auto& t : state.at("trees")) {
    RegressionTree tree;
    for (const auto& n : t) {
      RegressionNode node;
      node.feature = n.at(0).get<int>();
      node.threshold = n.at(1).get<double>();
      node.left = n.at(2).get<int>();
      node.right = n.at(3).get<int>();
      node.value = n.at(4).get<double>();
      if (node.feature >= p) throw ConfigError("boosting tree references an unknown feature");
      tree.push_back(node);
    }
    if (tree.empty()) throw ConfigError("empty boosting tree");
    trees_.push_back(std::move(tree));
  }
  if (C < 2 || trees_.size() % C != 0) throw ConfigError("malformed boosting state");
  train_loss_ = state.value("train_loss", std::vector<double>{});
  SetShape(C, p);
}

}  // namespace tabml
