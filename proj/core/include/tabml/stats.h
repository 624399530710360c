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

// Filter feature-selection statistics: cross tabulation, Pearson's
// chi-squared test of independence, plug-in entropy and information gain
// (bits), k-best selection and per-class association matrices.

#ifndef TABML_STATS_H_
#define TABML_STATS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "tabml/table.h"

namespace tabml {

struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<int64_t>> observed;  // [row][col]

  size_t rows() const { return observed.size(); }
  size_t cols() const { return observed.empty() ? 0 : observed[0].size(); }
  int64_t total() const;
  std::vector<int64_t> row_totals() const;
  std::vector<int64_t> col_totals() const;

  // Builds from raw counts with default "0", "1", ... labels.
  static ContingencyTable FromCounts(std::vector<std::vector<int64_t>> counts);
  nlohmann::ordered_json ToJson() const;
};

// Cross tabulation of two columns. Categorical columns, and numeric columns
// holding integers, are accepted; labels are the cell texts sorted
// lexicographically. Rows missing either value are skipped.
ContingencyTable Crosstab(const Table& table, const std::string& a, const std::string& b);

// Cross tabulation of two code vectors with codes in [0, nx) and [0, ny).
ContingencyTable CrosstabCodes(const std::vector<int>& x, int nx, const std::vector<int>& y,
                               int ny);

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  double min_expected = 0.0;
  int cells_below_5 = 0;
  bool assumption_ok = true;  // Every expected count >= 5.

  nlohmann::ordered_json ToJson() const;
};

// Pearson's test. Requires at least a 2x2 table with no zero marginal;
// otherwise throws NumericError.
ChiSquareResult ChiSquareTest(const ContingencyTable& ct);

// Shannon entropy in bits of a histogram; 0 log 0 = 0. Throws on an empty
// or all-zero histogram and on negative counts.
double Entropy(const std::vector<double>& counts);
double Entropy(const std::vector<int64_t>& counts);

// IG = H(y) - sum_v P(x=v) H(y | x=v) in bits, over equal-length code vectors.
double InformationGain(const std::vector<int>& x, const std::vector<int>& y);
// Same quantity from a contingency table (rows = x, cols = y).
double InformationGain(const ContingencyTable& ct);
// Entropy of the full joint distribution of a contingency table.
double JointEntropy(const ContingencyTable& ct);

enum class Scorer {
  kChi2,            // Pearson chi-squared of the feature-value x class table.
  kChi2Occurrence,  // Chi-squared of per-class feature sums (non-negative X).
  kMutualInfo,      // Plug-in information gain, bits.
};

Scorer ScorerFromString(const std::string& name);
std::string ScorerName(Scorer s);

struct FeatureScore {
  std::string feature;
  double score = 0.0;
  std::optional<double> p_value;
};

// Scores a single feature column against class codes y in [0, n_classes).
// A constant feature scores 0 with p = 1.
FeatureScore ScoreFeature(const std::string& name, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const std::vector<int>& y, int n_classes, Scorer scorer);

struct SelectionResult {
  Scorer scorer = Scorer::kChi2;
  int k = 0;
  std::vector<std::string> selected;  // Original column order.
  std::vector<FeatureScore> ranking;  // Score desc, then name asc.

  nlohmann::ordered_json ToJson() const;
  static SelectionResult FromJson(const nlohmann::json& j);
};

// Ranks all features and keeps the top k. Throws ConfigError when k is not
// in [1, n_features].
SelectionResult SelectKBest(const Eigen::MatrixXd& X, const std::vector<std::string>& names,
                            const std::vector<int>& y, int n_classes, Scorer scorer, int k);

struct AssociationMatrix {
  static constexpr double kAlpha = 0.05;

  std::vector<std::string> features;
  std::vector<std::string> targets;       // "Mortality", "Class1", ...
  std::vector<std::vector<double>> chi2;  // [feature][target]
  std::vector<std::vector<double>> p_raw;

  // Raw p when below kAlpha, else exactly 1.0.
  double masked_p(size_t f, size_t t) const;
  int associated_count(size_t t) const;

  std::string ScoresCsv() const;
  std::string MaskedPValuesCsv() const;
  nlohmann::ordered_json ToJson() const;
};

// Column "Mortality" scores each feature against the multiclass y; column
// "Class<c+1>" against the one-vs-rest binarisation of y for class c.
AssociationMatrix ClassAssociationMatrix(const Eigen::MatrixXd& X,
                                         const std::vector<std::string>& names,
                                         const std::vector<int>& y, int n_classes,
                                         Scorer scorer = Scorer::kChi2,
                                         const std::string& target_name = "Mortality");

}  // namespace tabml

#endif  // TABML_STATS_H_
