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

// CART classification tree with Gini impurity. Splits are searched over the
// bin boundaries of BinnedFeatures; among equal gains the first candidate
// feature (ascending index) and the lowest boundary win.

#ifndef TABML_LEARNERS_DECISION_TREE_H_
#define TABML_LEARNERS_DECISION_TREE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "tabml/learners/binned.h"
#include "tabml/learners/model.h"
#include "tabml/rng.h"

namespace tabml {

// Number of features examined per node: every feature, floor(sqrt(p)), or a
// fixed count (capped at p).
struct MaxFeatures {
  enum class Kind { kAll, kSqrt, kCount };
  Kind kind = Kind::kAll;
  int count = 0;

  int Resolve(int p) const;
  nlohmann::ordered_json ToJson() const;
  static MaxFeatures FromJson(const nlohmann::json& j);
};

struct TreeConfig {
  std::optional<int> max_depth;  // nullopt: grow until pure or too small.
  int min_samples_split = 2;
  int min_samples_leaf = 1;
  MaxFeatures max_features;

  void Validate() const;
  nlohmann::ordered_json ToJson() const;
  // Reads the keys it knows and leaves the rest to the caller.
  void ReadJson(const nlohmann::json& j, std::vector<std::string>* consumed);
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf.
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> value;  // Class distribution of training rows.

  bool is_leaf() const { return feature < 0; }
};

class DecisionTree : public Classifier {
 public:
  explicit DecisionTree(TreeConfig cfg = {}, uint64_t seed = 0)
      : cfg_(std::move(cfg)), seed_(seed) {
    cfg_.Validate();
  }

  std::string family() const override { return "tree"; }
  void Fit(const Matrix& X, const Labels& y) override;
  // Rows with weight 0 are ignored; other weights act as multiplicities
  // (bootstrap counts). min_samples_* count distinct rows.
  void FitBinned(const BinnedFeatures& bf, const Labels& y, int n_classes,
                 const std::vector<double>& weights);

  Matrix PredictProba(const Matrix& X) const override;
  // Index of the leaf that row i of X falls into.
  int Apply(const Matrix& X, Eigen::Index i) const;

  nlohmann::ordered_json Params() const override;
  nlohmann::ordered_json State() const override;
  void LoadState(const nlohmann::json& state) override;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const;
  int n_leaves() const;

 private:
  TreeConfig cfg_;
  uint64_t seed_;
  std::vector<TreeNode> nodes_;
};

}  // namespace tabml

#endif  // TABML_LEARNERS_DECISION_TREE_H_
