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

#ifndef TABML_METRICS_H_
#define TABML_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tabml {

// Rows = actual class, columns = predicted class.
struct ConfusionMatrix {
  int n_classes = 0;
  std::vector<std::vector<int64_t>> counts;

  int64_t total() const;
  int64_t tp(int c) const { return counts[c][c]; }
  int64_t fn(int c) const;
  int64_t fp(int c) const;
  int64_t tn(int c) const { return total() - tp(c) - fn(c) - fp(c); }
  int64_t row_total(int c) const;
  int64_t col_total(int c) const;

  static ConfusionMatrix FromCounts(std::vector<std::vector<int64_t>> counts);
  // Header row "actual\predicted,0,1,..."; class labels optional.
  std::string ToCsv(const std::vector<std::string>& labels = {}) const;
  nlohmann::ordered_json ToJson() const;
};

ConfusionMatrix ComputeConfusionMatrix(const std::vector<int>& y_true,
                                       const std::vector<int>& y_pred, int n_classes);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t support = 0;
  bool zero_division = false;  // Some ratio had a zero denominator.
};

struct ClassificationReport {
  std::vector<std::string> labels;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  ClassMetrics macro;
  ClassMetrics weighted;
  int64_t total = 0;
  bool zero_division = false;

  // Fixed-width text: two decimals for precision/recall/F1, four for accuracy.
  std::string ToText() const;
  nlohmann::ordered_json ToJson() const;
};

// Throws ConfigError on an empty matrix. Zero denominators yield 0 and set
// the zero_division flags.
ClassificationReport MakeClassificationReport(const ConfusionMatrix& cm,
                                              std::vector<std::string> labels = {});

struct KappaResult {
  double po = 0.0;
  double pe = 0.0;
  double kappa = 0.0;
  std::string band;

  nlohmann::ordered_json ToJson() const;
};

// none (<= 0), slight (<= .20), fair (<= .40), moderate (<= .60),
// substantial (<= .80), almost-perfect.
std::string KappaBand(double kappa);

KappaResult CohenKappa(const std::vector<int>& a, const std::vector<int>& b);
KappaResult CohenKappa(const ConfusionMatrix& cm);

struct RocCurve {
  std::vector<double> thresholds;  // Descending; first is +inf.
  std::vector<double> fpr;
  std::vector<double> tpr;
  double auc = 0.0;

  std::string ToCsv() const;
};

// Positive iff score >= threshold. AUC by the trapezoid rule, which equals
// the Mann-Whitney concordance with ties counted one half.
RocCurve ComputeRoc(const std::vector<int>& y_true, const std::vector<double>& scores);

// Pools every (truth, score) pair of all class blocks into one curve.
RocCurve MicroAverageRoc(const std::vector<std::vector<int>>& truths,
                         const std::vector<std::vector<double>>& scores);

}  // namespace tabml

#endif  // TABML_METRICS_H_
