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

#include "tabml/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "tabml/errors.h"
#include "tabml/table.h"

namespace tabml {
namespace {

double Ratio(int64_t num, int64_t den, bool* zero_division) {
  if (den == 0) {
    *zero_division = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

std::string PadLeft(const std::string& s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

int64_t ConfusionMatrix::total() const {
  int64_t n = 0;
  for (const auto& r : counts) n += std::accumulate(r.begin(), r.end(), int64_t{0});
  return n;
}

int64_t ConfusionMatrix::row_total(int c) const {
  return std::accumulate(counts[c].begin(), counts[c].end(), int64_t{0});
}

int64_t ConfusionMatrix::col_total(int c) const {
  int64_t n = 0;
  for (const auto& r : counts) n += r[c];
  return n;
}

int64_t ConfusionMatrix::fn(int c) const { return row_total(c) - tp(c); }
int64_t ConfusionMatrix::fp(int c) const { return col_total(c) - tp(c); }

ConfusionMatrix ConfusionMatrix::FromCounts(std::vector<std::vector<int64_t>> counts) {
  ConfusionMatrix cm;
  cm.n_classes = static_cast<int>(counts.size());
  for (const auto& r : counts) {
    if (static_cast<int>(r.size()) != cm.n_classes) throw ConfigError("confusion matrix must be square");
    for (int64_t v : r) {
      if (v < 0) throw ConfigError("confusion counts must be non-negative");
    }
  }
  cm.counts = std::move(counts);
  return cm;
}

std::string ConfusionMatrix::ToCsv(const std::vector<std::string>& labels) const {
  auto label = [&](int c) { return labels.empty() ? std::to_string(c) : labels[c]; };
  std::string out = "actual\\predicted";
  for (int c = 0; c < n_classes; ++c) out += "," + label(c);
  out += "\n";
  for (int r = 0; r < n_classes; ++r) {
    out += label(r);
    for (int c = 0; c < n_classes; ++c) out += "," + std::to_string(counts[r][c]);
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json ConfusionMatrix::ToJson() const {
  nlohmann::ordered_json j;
  j["n_classes"] = n_classes;
  j["counts"] = counts;
  return j;
}

ConfusionMatrix ComputeConfusionMatrix(const std::vector<int>& y_true,
                                       const std::vector<int>& y_pred, int n_classes) {
  if (y_true.size() != y_pred.size()) throw ConfigError("label vectors differ in length");
  if (n_classes < 1) throw ConfigError("n_classes must be positive");
  ConfusionMatrix cm;
  cm.n_classes = n_classes;
  cm.counts.assign(n_classes, std::vector<int64_t>(n_classes, 0));
  for (size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] < 0 || y_true[i] >= n_classes || y_pred[i] < 0 || y_pred[i] >= n_classes) {
      throw ConfigError("class code out of range at index " + std::to_string(i));
    }
    ++cm.counts[y_true[i]][y_pred[i]];
  }
  return cm;
}

ClassificationReport MakeClassificationReport(const ConfusionMatrix& cm,
                                              std::vector<std::string> labels) {
  const int64_t total = cm.total();
  if (total <= 0) throw ConfigError("classification report of an empty confusion matrix");
  if (labels.empty()) {
    for (int c = 0; c < cm.n_classes; ++c) labels.push_back(std::to_string(c));
  }
  ClassificationReport rep;
  rep.labels = std::move(labels);
  rep.total = total;
  int64_t trace = 0;
  for (int c = 0; c < cm.n_classes; ++c) {
    ClassMetrics m;
    m.support = cm.row_total(c);
    m.precision = Ratio(cm.tp(c), cm.col_total(c), &m.zero_division);
    m.recall = Ratio(cm.tp(c), m.support, &m.zero_division);
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    rep.zero_division |= m.zero_division;
    rep.per_class.push_back(m);
    trace += cm.tp(c);
  }
  rep.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  const double k = static_cast<double>(cm.n_classes);
  for (const auto& m : rep.per_class) {
    const double w = static_cast<double>(m.support) / static_cast<double>(total);
    rep.macro.precision += m.precision / k;
    rep.macro.recall += m.recall / k;
    rep.macro.f1 += m.f1 / k;
    rep.weighted.precision += m.precision * w;
    rep.weighted.recall += m.recall * w;
    rep.weighted.f1 += m.f1 * w;
  }
  rep.macro.support = rep.weighted.support = total;
  rep.macro.zero_division = rep.weighted.zero_division = rep.zero_division;
  return rep;
}

std::string ClassificationReport::ToText() const {
  size_t width = 12;
  for (const auto& l : labels) width = std::max(width, l.size());
  auto row = [&](const std::string& name, const ClassMetrics& m) {
    return PadLeft(name, width) + PadLeft(Fixed(m.precision, 2), 11) +
           PadLeft(Fixed(m.recall, 2), 10) + PadLeft(Fixed(m.f1, 2), 10) +
           PadLeft(std::to_string(m.support), 10) + "\n";
  };
  std::string out = std::string(width, ' ') + PadLeft("precision", 11) + PadLeft("recall", 10) +
                    PadLeft("f1-score", 10) + PadLeft("support", 10) + "\n\n";
  for (size_t c = 0; c < per_class.size(); ++c) out += row(labels[c], per_class[c]);
  out += "\n";
  out += PadLeft("accuracy", width) + std::string(21, ' ') + PadLeft(Fixed(accuracy, 4), 10) +
         PadLeft(std::to_string(total), 10) + "\n";
  out += row("macro avg", macro);
  out += row("weighted avg", weighted);
  return out;
}

nlohmann::ordered_json ClassificationReport::ToJson() const {
  auto metrics = [](const ClassMetrics& m) {
    nlohmann::ordered_json j;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["support"] = m.support;
    j["zero_division"] = m.zero_division;
    return j;
  };
  nlohmann::ordered_json j;
  j["classes"] = nlohmann::ordered_json::object();
  for (size_t c = 0; c < per_class.size(); ++c) j["classes"][labels[c]] = metrics(per_class[c]);
  j["accuracy"] = accuracy;
  j["macro_avg"] = metrics(macro);
  j["weighted_avg"] = metrics(weighted);
  j["total"] = total;
  j["zero_division"] = zero_division;
  return j;
}

std::string KappaBand(double kappa) {
  if (kappa <= 0.0) return "none";
  if (kappa <= 0.20) return "slight";
  if (kappa <= 0.40) return "fair";
  if (kappa <= 0.60) return "moderate";
  if (kappa <= 0.80) return "substantial";
  return "almost-perfect";
}

nlohmann::ordered_json KappaResult::ToJson() const {
  nlohmann::ordered_json j;
  j["po"] = po;
  j["pe"] = pe;
  j["kappa"] = kappa;
  j["band"] = band;
  return j;
}

KappaResult CohenKappa(const ConfusionMatrix& cm) {
  const double n = static_cast<double>(cm.total());
  if (!(n > 0)) throw ConfigError("kappa of empty label vectors");
  KappaResult r;
  for (int c = 0; c < cm.n_classes; ++c) {
    r.po += static_cast<double>(cm.tp(c)) / n;
    r.pe += (static_cast<double>(cm.row_total(c)) / n) * (static_cast<double>(cm.col_total(c)) / n);
  }
  if (r.pe >= 1.0) {
    // Both raters used one single class throughout: total agreement.
    r.kappa = 1.0;
  } else {
    r.kappa = (r.po - r.pe) / (1.0 - r.pe);
  }
  r.band = KappaBand(r.kappa);
  return r;
}

KappaResult CohenKappa(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) {
    throw ConfigError("kappa needs two non-empty label vectors of equal length");
  }
  int n_classes = 0;
  for (size_t i = 0; i < a.size(); ++i) n_classes = std::max({n_classes, a[i] + 1, b[i] + 1});
  return CohenKappa(ComputeConfusionMatrix(a, b, n_classes));
}

std::string RocCurve::ToCsv() const {
  std::string out = "threshold,fpr,tpr\n";
  for (size_t i = 0; i < thresholds.size(); ++i) {
    out += (std::isinf(thresholds[i]) ? std::string("inf") : FormatNumber(thresholds[i])) + "," +
           FormatNumber(fpr[i]) + "," + FormatNumber(tpr[i]) + "\n";
  }
  return out;
}

RocCurve ComputeRoc(const std::vector<int>& y_true, const std::vector<double>& scores) {
  if (y_true.size() != scores.size()) throw ConfigError("labels and scores differ in length");
  int64_t pos = 0;
  int64_t neg = 0;
  for (size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] != 0 && y_true[i] != 1) throw ConfigError("ROC labels must be 0 or 1");
    if (!std::isfinite(scores[i])) throw ConfigError("ROC scores must be finite");
    (y_true[i] ? pos : neg) += 1;
  }
  if (pos == 0 || neg == 0) throw ConfigError("ROC needs both classes in the truth vector");
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  RocCurve roc;
  roc.thresholds.push_back(std::numeric_limits<double>::infinity());
  roc.fpr.push_back(0.0);
  roc.tpr.push_back(0.0);
  int64_t tp = 0;
  int64_t fp = 0;
  size_t i = 0;
  double auc2 = 0.0;  // Twice the area, in units of (1/neg)(1/pos).
  while (i < order.size()) {
    const double s = scores[order[i]];
    const int64_t tp0 = tp;
    const int64_t fp0 = fp;
    while (i < order.size() && scores[order[i]] == s) {
      (y_true[order[i]] ? tp : fp) += 1;
      ++i;
    }
    auc2 += static_cast<double>(fp - fp0) * static_cast<double>(tp + tp0);
    roc.thresholds.push_back(s);
    roc.fpr.push_back(static_cast<double>(fp) / static_cast<double>(neg));
    roc.tpr.push_back(static_cast<double>(tp) / static_cast<double>(pos));
  }
  roc.auc = auc2 / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return roc;
}

RocCurve MicroAverageRoc(const std::vector<std::vector<int>>& truths,
                         const std::vector<std::vector<double>>& scores) {
  if (truths.size() != scores.size()) throw ConfigError("class blocks are misaligned");
  std::vector<int> y;
  std::vector<double> s;
  for (size_t c = 0; c < truths.size(); ++c) {
    if (truths[c].size() != scores[c].size()) throw ConfigError("class blocks are misaligned");
    y.insert(y.end(), truths[c].begin(), truths[c].end());
    s.insert(s.end(), scores[c].begin(), scores[c].end());
  }
  return ComputeRoc(y, s);
}

}  // namespace tabml
