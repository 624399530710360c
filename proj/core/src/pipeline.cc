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

#include "tabml/pipeline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tabml/errors.h"

namespace tabml {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::ordered_json EdgeToJson(double e) {
  if (e == kInf) return "inf";
  if (e == -kInf) return "-inf";
  return e;
}

double EdgeFromJson(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ConfigError("bin edge must be a number, \"inf\" or \"-inf\", got " + j.dump());
}

int BinaryValue(const Column& c, size_t row, const std::string& name) {
  const std::string text = c.text(row);
  if (text == "0") return 0;
  if (text == "1") return 1;
  throw DataError("column '" + name + "' row " + std::to_string(row) + " holds '" + text +
                  "', expected 0 or 1");
}

}  // namespace

std::string MortalityLabel(MortalityClass c) {
  return "Class " + std::to_string(static_cast<int>(c) + 1);
}

MortalityClass DeriveMortality(int death5, int death10) {
  if ((death5 != 0 && death5 != 1) || (death10 != 0 && death10 != 1)) {
    throw DataError("death indicators must be 0 or 1");
  }
  if (death5 == 1 && death10 == 1) return MortalityClass::kClass1;
  if (death5 == 0 && death10 == 1) return MortalityClass::kClass2;
  if (death5 == 0 && death10 == 0) return MortalityClass::kClass3;
  throw DataError("impossible state: dead at the 5-year mark but alive at the 10-year mark");
}

Table DeriveMortalityColumn(const Table& table, const std::string& death5,
                            const std::string& death10) {
  const Column& d5 = table.column(death5);
  const Column& d10 = table.column(death10);
  std::vector<int32_t> codes(table.n_rows());
  for (size_t i = 0; i < table.n_rows(); ++i) {
    try {
      codes[i] = static_cast<int32_t>(
          DeriveMortality(BinaryValue(d5, i, death5), BinaryValue(d10, i, death10)));
    } catch (const DataError& e) {
      throw DataError(std::string(e.what()) + " (row " + std::to_string(i) + ")");
    }
  }
  std::vector<std::string> dict = {"Class 1", "Class 2", "Class 3"};
  return table.without({death5, death10})
      .with_column(kTargetColumn, Column::FromCodes(std::move(dict), std::move(codes)));
}

void BinningSpec::Validate() const {
  if (edges.size() < 2) throw ConfigError("binning '" + variable + "' needs at least two edges");
  if (labels.size() + 1 != edges.size()) {
    throw ConfigError("binning '" + variable + "' needs exactly one label per interval");
  }
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) {
      throw ConfigError("binning '" + variable + "' edges are not strictly increasing");
    }
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw ConfigError("binning '" + variable + "' labels repeat");
  if (new_name.empty()) throw ConfigError("binning '" + variable + "' has no new_name");
}

int BinningSpec::BinOf(double v) const {
  if (include_lowest && v == edges.front()) return 0;
  // First edge >= v; v then sits in (edges[k-1], edges[k]].
  auto it = std::lower_bound(edges.begin(), edges.end(), v);
  if (it == edges.begin() || it == edges.end()) return -1;
  return static_cast<int>(it - edges.begin()) - 1;
}

nlohmann::ordered_json BinningSpec::ToJson() const {
  nlohmann::ordered_json j;
  j["variable"] = variable;
  j["new_name"] = new_name;
  j["edges"] = nlohmann::ordered_json::array();
  for (double e : edges) j["edges"].push_back(EdgeToJson(e));
  j["labels"] = labels;
  j["include_lowest"] = include_lowest;
  return j;
}

BinningSpec BinningSpec::FromJson(const nlohmann::json& j) {
  BinningSpec s;
  try {
    s.variable = j.at("variable").get<std::string>();
    s.new_name = j.value("new_name", s.variable + "_RANGE");
    for (const auto& e : j.at("edges")) s.edges.push_back(EdgeFromJson(e));
    s.labels = j.at("labels").get<std::vector<std::string>>();
    s.include_lowest = j.value("include_lowest", true);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid binning spec: ") + e.what());
  }
  s.Validate();
  return s;
}

Table BinColumn(const Table& table, const BinningSpec& spec) {
  spec.Validate();
  const Column& src = table.column(spec.variable);
  if (!src.is_numeric()) throw ConfigError("cannot bin categorical column '" + spec.variable + "'");
  const auto& v = src.numeric();
  std::vector<int32_t> codes(v.size(), Column::kMissingCode);
  for (size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) continue;
    const int b = spec.BinOf(v[i]);
    if (b < 0) {
      throw DataError("value " + FormatNumber(v[i]) + " of '" + spec.variable + "' at row " +
                      std::to_string(i) + " falls outside the bin edges");
    }
    codes[i] = b;
  }
  Table out = table.without({spec.variable});
  return out.with_column(spec.new_name, Column::FromCodes(spec.labels, std::move(codes)));
}

nlohmann::ordered_json DummyPlan::ToJson() const {
  nlohmann::ordered_json j;
  j["columns"] = columns;
  j["drop"] = drop;
  return j;
}

DummyPlan DummyPlan::FromJson(const nlohmann::json& j) {
  DummyPlan p;
  try {
    p.columns = j.at("columns").get<std::vector<std::string>>();
    p.drop = j.value("drop", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid dummy plan: ") + e.what());
  }
  return p;
}

std::string DummyName(const std::string& column, const std::string& category) {
  return column + "_" + category;
}

Table DummyEncode(const Table& table, const DummyPlan& plan) {
  std::set<std::string> drop(plan.drop.begin(), plan.drop.end());
  std::set<std::string> generated;
  std::vector<std::string> names;
  std::vector<Column> cols;
  for (const auto& source : plan.columns) {
    const Column& c = table.column(source);
    if (!c.is_categorical()) {
      throw ConfigError("dummy source column '" + source + "' is not categorical");
    }
    const auto& cats = c.categories();
    const auto& codes = c.codes();
    for (size_t k = 0; k < cats.size(); ++k) {
      const std::string name = DummyName(source, cats[k]);
      generated.insert(name);
      if (drop.count(name)) continue;
      std::vector<double> ind(codes.size());
      for (size_t i = 0; i < codes.size(); ++i) {
        ind[i] = codes[i] == static_cast<int32_t>(k) ? 1.0 : 0.0;
      }
      names.push_back(name);
      cols.push_back(Column::Numeric(std::move(ind)));
    }
  }
  for (const auto& d : plan.drop) {
    if (!generated.count(d)) throw ConfigError("drop list names unknown dummy '" + d + "'");
  }
  Table out = table.without(plan.columns);
  for (size_t k = 0; k < names.size(); ++k) out = out.with_column(names[k], std::move(cols[k]));
  return out;
}

Table LabelEncodeTarget(const Table& table, const std::string& column) {
  const Column& c = table.column(column);
  if (c.is_numeric()) {
    throw ConfigError("target column '" + column + "' is already label-encoded");
  }
  std::vector<double> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    const std::string label = c.text(i);
    if (label == "Class 1") {
      out[i] = 0;
    } else if (label == "Class 2") {
      out[i] = 1;
    } else if (label == "Class 3") {
      out[i] = 2;
    } else {
      throw DataError("unknown target label '" + label + "' at row " + std::to_string(i));
    }
  }
  return table.with_column(column, Column::Numeric(std::move(out)));
}

nlohmann::ordered_json Preset::ToJson() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["bins"] = nlohmann::ordered_json::array();
  for (const auto& b : bins) j["bins"].push_back(b.ToJson());
  j["drop_before_binning"] = drop_before_binning;
  j["fill_missing_columns"] = fill_missing_columns;
  j["fill_label"] = fill_label;
  j["decode_column"] = decode_column;
  j["decode_map"] = nlohmann::ordered_json(decode_map);
  j["analysis_variables"] = analysis_variables;
  j["extra_pairs"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : extra_pairs) j["extra_pairs"].push_back({a, b});
  j["drop_after_analysis"] = drop_after_analysis;
  j["dummy_plan"] = dummy_plan.ToJson();
  return j;
}

Preset Preset::FromJson(const nlohmann::json& j) {
  Preset p;
  try {
    p.name = j.value("name", std::string("custom"));
    for (const auto& b : j.value("bins", nlohmann::json::array())) {
      p.bins.push_back(BinningSpec::FromJson(b));
    }
    p.drop_before_binning = j.value("drop_before_binning", std::vector<std::string>{});
    p.fill_missing_columns = j.value("fill_missing_columns", std::vector<std::string>{});
    p.fill_label = j.value("fill_label", std::string("Missing"));
    p.decode_column = j.value("decode_column", std::string());
    p.decode_map = j.value("decode_map", std::map<std::string, std::string>{});
    p.analysis_variables = j.value("analysis_variables", std::vector<std::string>{});
    for (const auto& pair : j.value("extra_pairs", nlohmann::json::array())) {
      p.extra_pairs.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    }
    p.drop_after_analysis = j.value("drop_after_analysis", std::vector<std::string>{});
    if (j.contains("dummy_plan")) p.dummy_plan = DummyPlan::FromJson(j.at("dummy_plan"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid preset: ") + e.what());
  }
  return p;
}

}  // namespace tabml
