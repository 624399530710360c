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

#include "tabml/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tabml/errors.h"
#include "tabml/special_functions.h"

namespace tabml {
namespace {

struct Coded {
  std::vector<std::string> labels;
  std::vector<int> codes;  // -1 = missing.
};

Coded Discretize(const Column& c, const std::string& name) {
  Coded out;
  out.codes.assign(c.size(), -1);
  if (c.is_categorical()) {
    out.labels = c.categories();
    for (size_t i = 0; i < c.size(); ++i) out.codes[i] = c.code(i);
    return out;
  }
  const auto& v = c.numeric();
  std::vector<double> distinct;
  for (double x : v) {
    if (std::isnan(x)) continue;
    if (x != std::floor(x)) {
      throw ConfigError("column '" + name + "' is continuous; bin it before cross-tabulating");
    }
    distinct.push_back(x);
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::string> text;
  for (double x : distinct) text.push_back(FormatNumber(x));
  std::vector<size_t> order(distinct.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return text[a] < text[b]; });
  std::vector<int> rank(distinct.size());
  for (size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = static_cast<int>(r);
    out.labels.push_back(text[order[r]]);
  }
  for (size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) continue;
    auto it = std::lower_bound(distinct.begin(), distinct.end(), v[i]);
    out.codes[i] = rank[it - distinct.begin()];
  }
  return out;
}

// Codes of the distinct values of a feature vector, ascending.
std::vector<int> ValueCodes(const Eigen::Ref<const Eigen::VectorXd>& x, int* n_values) {
  std::vector<double> distinct(x.data(), x.data() + x.size());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> codes(static_cast<size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    codes[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), x[i]) -
                                distinct.begin());
  }
  *n_values = static_cast<int>(distinct.size());
  return codes;
}

double PlogP(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

std::string CsvCell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

int64_t ContingencyTable::total() const {
  int64_t n = 0;
  for (const auto& row : observed) {
    for (int64_t v : row) n += v;
  }
  return n;
}

std::vector<int64_t> ContingencyTable::row_totals() const {
  std::vector<int64_t> t(rows(), 0);
  for (size_t i = 0; i < rows(); ++i) {
    for (int64_t v : observed[i]) t[i] += v;
  }
  return t;
}

std::vector<int64_t> ContingencyTable::col_totals() const {
  std::vector<int64_t> t(cols(), 0);
  for (const auto& row : observed) {
    for (size_t j = 0; j < row.size(); ++j) t[j] += row[j];
  }
  return t;
}

ContingencyTable ContingencyTable::FromCounts(std::vector<std::vector<int64_t>> counts) {
  ContingencyTable ct;
  const size_t c = counts.empty() ? 0 : counts[0].size();
  for (const auto& row : counts) {
    if (row.size() != c) throw ConfigError("contingency rows differ in length");
    for (int64_t v : row) {
      if (v < 0) throw ConfigError("contingency counts must be non-negative");
    }
  }
  for (size_t i = 0; i < counts.size(); ++i) ct.row_labels.push_back(std::to_string(i));
  for (size_t j = 0; j < c; ++j) ct.col_labels.push_back(std::to_string(j));
  ct.observed = std::move(counts);
  return ct;
}

nlohmann::ordered_json ContingencyTable::ToJson() const {
  nlohmann::ordered_json j;
  j["rows"] = row_labels;
  j["cols"] = col_labels;
  j["observed"] = observed;
  j["row_totals"] = row_totals();
  j["col_totals"] = col_totals();
  j["n"] = total();
  return j;
}

ContingencyTable Crosstab(const Table& table, const std::string& a, const std::string& b) {
  const Coded x = Discretize(table.column(a), a);
  const Coded y = Discretize(table.column(b), b);
  ContingencyTable ct;
  ct.row_labels = x.labels;
  ct.col_labels = y.labels;
  ct.observed.assign(x.labels.size(), std::vector<int64_t>(y.labels.size(), 0));
  for (size_t i = 0; i < x.codes.size(); ++i) {
    if (x.codes[i] < 0 || y.codes[i] < 0) continue;
    ++ct.observed[x.codes[i]][y.codes[i]];
  }
  return ct;
}

ContingencyTable CrosstabCodes(const std::vector<int>& x, int nx, const std::vector<int>& y,
                               int ny) {
  if (x.size() != y.size()) throw ConfigError("cross tabulation needs equal-length inputs");
  std::vector<std::vector<int64_t>> counts(nx, std::vector<int64_t>(ny, 0));
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= nx || y[i] < 0 || y[i] >= ny) {
      throw ConfigError("code out of range at index " + std::to_string(i));
    }
    ++counts[x[i]][y[i]];
  }
  return ContingencyTable::FromCounts(std::move(counts));
}

nlohmann::ordered_json ChiSquareResult::ToJson() const {
  nlohmann::ordered_json j;
  j["chi2"] = statistic;
  j["df"] = df;
  j["p"] = p_value;
  j["min_expected"] = min_expected;
  j["cells_below_5"] = cells_below_5;
  j["assumption_ok"] = assumption_ok;
  return j;
}

ChiSquareResult ChiSquareTest(const ContingencyTable& ct) {
  const size_t r = ct.rows();
  const size_t c = ct.cols();
  if (r < 2 || c < 2) {
    throw NumericError("chi-squared test needs at least a 2x2 table, got " + std::to_string(r) +
                       "x" + std::to_string(c));
  }
  const auto rt = ct.row_totals();
  const auto ctot = ct.col_totals();
  for (size_t i = 0; i < r; ++i) {
    if (rt[i] == 0) throw NumericError("degenerate margin: row '" + ct.row_labels[i] + "' is empty");
  }
  for (size_t j = 0; j < c; ++j) {
    if (ctot[j] == 0) {
      throw NumericError("degenerate margin: column '" + ct.col_labels[j] + "' is empty");
    }
  }
  const double n = static_cast<double>(ct.total());
  ChiSquareResult res;
  res.min_expected = std::numeric_limits<double>::infinity();
  double stat = 0.0;
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < c; ++j) {
      const double e = static_cast<double>(rt[i]) * static_cast<double>(ctot[j]) / n;
      const double d = static_cast<double>(ct.observed[i][j]) - e;
      stat += d * d / e;
      res.min_expected = std::min(res.min_expected, e);
      if (e < 5.0) ++res.cells_below_5;
    }
  }
  res.statistic = stat;
  res.df = static_cast<int>((r - 1) * (c - 1));
  res.p_value = ChiSquareSurvival(stat, res.df);
  res.assumption_ok = res.cells_below_5 == 0;
  return res;
}

double Entropy(const std::vector<double>& counts) {
  double total = 0.0;
  for (double v : counts) {
    if (v < 0.0 || std::isnan(v)) throw NumericError("entropy needs non-negative counts");
    total += v;
  }
  if (!(total > 0.0)) throw NumericError("entropy of an all-zero histogram is undefined");
  double h = 0.0;
  for (double v : counts) h -= PlogP(v / total);
  return h == 0.0 ? 0.0 : h;
}

double Entropy(const std::vector<int64_t>& counts) {
  return Entropy(std::vector<double>(counts.begin(), counts.end()));
}

double JointEntropy(const ContingencyTable& ct) {
  std::vector<int64_t> cells;
  for (const auto& row : ct.observed) cells.insert(cells.end(), row.begin(), row.end());
  return Entropy(cells);
}

double InformationGain(const ContingencyTable& ct) {
  const double n = static_cast<double>(ct.total());
  if (!(n > 0)) throw NumericError("information gain of an empty table");
  double conditional = 0.0;
  for (const auto& row : ct.observed) {
    int64_t rn = 0;
    for (int64_t v : row) rn += v;
    if (rn == 0) continue;
    conditional += (static_cast<double>(rn) / n) * Entropy(row);
  }
  const double ig = Entropy(ct.col_totals()) - conditional;
  return std::max(0.0, ig);
}

double InformationGain(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) throw ConfigError("information gain needs equal-length inputs");
  if (x.empty()) throw ConfigError("information gain of empty inputs");
  const int nx = *std::max_element(x.begin(), x.end()) + 1;
  const int ny = *std::max_element(y.begin(), y.end()) + 1;
  return InformationGain(CrosstabCodes(x, nx, y, ny));
}

Scorer ScorerFromString(const std::string& name) {
  if (name == "chi2") return Scorer::kChi2;
  if (name == "chi2_occurrence") return Scorer::kChi2Occurrence;
  if (name == "mutual_info" || name == "information_gain") return Scorer::kMutualInfo;
  throw ConfigError("unknown scorer '" + name + "' (chi2, chi2_occurrence, mutual_info)");
}

std::string ScorerName(Scorer s) {
  switch (s) {
    case Scorer::kChi2:
      return "chi2";
    case Scorer::kChi2Occurrence:
      return "chi2_occurrence";
    case Scorer::kMutualInfo:
      return "mutual_info";
  }
  return "chi2";
}

FeatureScore ScoreFeature(const std::string& name, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const std::vector<int>& y, int n_classes, Scorer scorer) {
  if (static_cast<size_t>(x.size()) != y.size()) {
    throw ConfigError("feature '" + name + "' length differs from the target");
  }
  FeatureScore fs{name, 0.0, std::nullopt};
  if (scorer == Scorer::kChi2Occurrence) {
    std::vector<double> observed(n_classes, 0.0);
    std::vector<double> class_n(n_classes, 0.0);
    double feature_sum = 0.0;
    for (size_t i = 0; i < y.size(); ++i) {
      if (x[i] < 0) throw ConfigError("feature '" + name + "' has negative values");
      observed[y[i]] += x[i];
      class_n[y[i]] += 1.0;
      feature_sum += x[i];
    }
    fs.p_value = 1.0;
    if (feature_sum <= 0.0) return fs;
    double stat = 0.0;
    int present = 0;
    for (int c = 0; c < n_classes; ++c) {
      if (class_n[c] == 0.0) continue;
      ++present;
      const double e = feature_sum * class_n[c] / static_cast<double>(y.size());
      stat += (observed[c] - e) * (observed[c] - e) / e;
    }
    if (present < 2) return fs;
    fs.score = stat;
    fs.p_value = ChiSquareSurvival(stat, present - 1);
    return fs;
  }
  int n_values = 0;
  const std::vector<int> codes = ValueCodes(x, &n_values);
  const ContingencyTable ct = CrosstabCodes(codes, n_values, y, n_classes);
  if (scorer == Scorer::kMutualInfo) {
    fs.score = InformationGain(ct);
    return fs;
  }
  // Drop empty classes; a constant feature or single class has no association.
  ContingencyTable reduced = ct;
  const auto col_tot = ct.col_totals();
  for (auto& row : reduced.observed) {
    std::vector<int64_t> kept;
    for (size_t j = 0; j < row.size(); ++j) {
      if (col_tot[j] > 0) kept.push_back(row[j]);
    }
    row = std::move(kept);
  }
  fs.p_value = 1.0;
  if (reduced.rows() < 2 || reduced.cols() < 2) return fs;
  reduced.col_labels.assign(reduced.cols(), "");
  const ChiSquareResult r = ChiSquareTest(reduced);
  fs.score = r.statistic;
  fs.p_value = r.p_value;
  return fs;
}

nlohmann::ordered_json SelectionResult::ToJson() const {
  nlohmann::ordered_json j;
  j["scorer"] = ScorerName(scorer);
  j["k"] = k;
  j["selected"] = selected;
  j["ranking"] = nlohmann::ordered_json::array();
  for (const auto& fs : ranking) {
    nlohmann::ordered_json e;
    e["feature"] = fs.feature;
    e["score"] = fs.score;
    if (fs.p_value) e["p"] = *fs.p_value;
    j["ranking"].push_back(e);
  }
  return j;
}

SelectionResult SelectionResult::FromJson(const nlohmann::json& j) {
  SelectionResult s;
  try {
    s.scorer = ScorerFromString(j.at("scorer").get<std::string>());
    s.k = j.at("k").get<int>();
    s.selected = j.at("selected").get<std::vector<std::string>>();
    for (const auto& e : j.value("ranking", nlohmann::json::array())) {
      FeatureScore fs{e.at("feature").get<std::string>(), e.at("score").get<double>(),
                      std::nullopt};
      if (e.contains("p")) fs.p_value = e.at("p").get<double>();
      s.ranking.push_back(fs);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid selection document: ") + e.what());
  }
  return s;
}

SelectionResult SelectKBest(const Eigen::MatrixXd& X, const std::vector<std::string>& names,
                            const std::vector<int>& y, int n_classes, Scorer scorer, int k) {
  const int p = static_cast<int>(X.cols());
  if (static_cast<int>(names.size()) != p) throw ConfigError("feature names do not match X");
  if (k < 1 || k > p) {
    throw ConfigError("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(p) + "]");
  }
  SelectionResult res;
  res.scorer = scorer;
  res.k = k;
  for (int j = 0; j < p; ++j) {
    res.ranking.push_back(ScoreFeature(names[j], X.col(j), y, n_classes, scorer));
  }
  std::sort(res.ranking.begin(), res.ranking.end(),
            [](const FeatureScore& a, const FeatureScore& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.feature < b.feature;
            });
  std::vector<char> chosen(p, 0);
  for (int r = 0; r < k; ++r) {
    const auto it = std::find(names.begin(), names.end(), res.ranking[r].feature);
    chosen[it - names.begin()] = 1;
  }
  for (int j = 0; j < p; ++j) {
    if (chosen[j]) res.selected.push_back(names[j]);
  }
  return res;
}

double AssociationMatrix::masked_p(size_t f, size_t t) const {
  const double p = p_raw[f][t];
  return p < kAlpha ? p : 1.0;
}

int AssociationMatrix::associated_count(size_t t) const {
  int n = 0;
  for (size_t f = 0; f < features.size(); ++f) n += p_raw[f][t] < kAlpha ? 1 : 0;
  return n;
}

std::string AssociationMatrix::ScoresCsv() const {
  std::string out = "feature";
  for (const auto& t : targets) out += "," + CsvCell(t);
  out += "\n";
  for (size_t f = 0; f < features.size(); ++f) {
    out += CsvCell(features[f]);
    for (size_t t = 0; t < targets.size(); ++t) out += "," + FormatNumber(chi2[f][t]);
    out += "\n";
  }
  return out;
}

std::string AssociationMatrix::MaskedPValuesCsv() const {
  std::string out = "feature";
  for (const auto& t : targets) out += "," + CsvCell(t);
  out += "\n";
  for (size_t f = 0; f < features.size(); ++f) {
    out += CsvCell(features[f]);
    for (size_t t = 0; t < targets.size(); ++t) out += "," + FormatNumber(masked_p(f, t));
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json AssociationMatrix::ToJson() const {
  nlohmann::ordered_json j;
  j["alpha"] = kAlpha;
  j["targets"] = targets;
  nlohmann::ordered_json counts;
  for (size_t t = 0; t < targets.size(); ++t) counts[targets[t]] = associated_count(t);
  j["associated_counts"] = counts;
  j["features"] = nlohmann::ordered_json::array();
  for (size_t f = 0; f < features.size(); ++f) {
    nlohmann::ordered_json e;
    e["feature"] = features[f];
    for (size_t t = 0; t < targets.size(); ++t) {
      e[targets[t]] = {{"chi2", chi2[f][t]}, {"p", p_raw[f][t]}, {"p_masked", masked_p(f, t)}};
    }
    j["features"].push_back(e);
  }
  return j;
}

AssociationMatrix ClassAssociationMatrix(const Eigen::MatrixXd& X,
                                         const std::vector<std::string>& names,
                                         const std::vector<int>& y, int n_classes, Scorer scorer,
                                         const std::string& target_name) {
  if (scorer == Scorer::kMutualInfo) {
    throw ConfigError("association matrices need a chi-squared scorer");
  }
  if (static_cast<int>(names.size()) != X.cols()) throw ConfigError("feature names do not match X");
  AssociationMatrix m;
  m.features = names;
  m.targets.push_back(target_name);
  for (int c = 0; c < n_classes; ++c) m.targets.push_back("Class" + std::to_string(c + 1));
  std::vector<std::vector<int>> binarized(n_classes, std::vector<int>(y.size()));
  for (int c = 0; c < n_classes; ++c) {
    for (size_t i = 0; i < y.size(); ++i) binarized[c][i] = y[i] == c ? 1 : 0;
  }
  for (Eigen::Index f = 0; f < X.cols(); ++f) {
    std::vector<double> scores;
    std::vector<double> ps;
    FeatureScore all = ScoreFeature(names[f], X.col(f), y, n_classes, scorer);
    scores.push_back(all.score);
    ps.push_back(all.p_value.value_or(1.0));
    for (int c = 0; c < n_classes; ++c) {
      FeatureScore one = ScoreFeature(names[f], X.col(f), binarized[c], 2, scorer);
      scores.push_back(one.score);
      ps.push_back(one.p_value.value_or(1.0));
    }
    m.chi2.push_back(std::move(scores));
    m.p_raw.push_back(std::move(ps));
  }
  return m;
}

}  // namespace tabml
