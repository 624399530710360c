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

// Transformations between the raw table and the model-ready table: target
// fusion, interval binning, k-1 dummy encoding and target label encoding.

#ifndef TABML_PIPELINE_H_
#define TABML_PIPELINE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabml/table.h"

namespace tabml {

inline constexpr const char* kTargetColumn = "Mortality";

enum class MortalityClass : int { kClass1 = 0, kClass2 = 1, kClass3 = 2 };

// "Class 1", "Class 2", "Class 3".
std::string MortalityLabel(MortalityClass c);

// (1,1) -> Class1, (0,1) -> Class2, (0,0) -> Class3. (1,0) is an impossible
// state and throws DataError; anything outside {0,1} throws as well.
MortalityClass DeriveMortality(int death5, int death10);

// Replaces DEATH_5/DEATH_10 with the categorical Mortality column (appended).
Table DeriveMortalityColumn(const Table& table, const std::string& death5 = "DEATH_5",
                            const std::string& death10 = "DEATH_10");

struct BinningSpec {
  std::string variable;
  std::string new_name;
  std::vector<double> edges;  // May start at -inf and end at +inf.
  std::vector<std::string> labels;
  bool include_lowest = true;

  // Throws ConfigError unless edges are strictly increasing, labels unique and
  // labels.size() == edges.size() - 1.
  void Validate() const;
  // Index of the bin holding v, or -1 when v is out of range.
  int BinOf(double v) const;

  nlohmann::ordered_json ToJson() const;
  static BinningSpec FromJson(const nlohmann::json& j);
};

// Bins a numeric column into the categorical column spec.new_name (appended);
// the source column is dropped. Missing stays missing. Intervals are
// (e_i, e_{i+1}], with the first closed on the left when include_lowest.
Table BinColumn(const Table& table, const BinningSpec& spec);

struct DummyPlan {
  std::vector<std::string> columns;
  std::vector<std::string> drop;

  nlohmann::ordered_json ToJson() const;
  static DummyPlan FromJson(const nlohmann::json& j);
};

// Name of the dummy for `category` of `column`, category verbatim.
std::string DummyName(const std::string& column, const std::string& category);

// Expands every plan column into 0/1 numeric indicators `<column>_<category>`
// (plan order, then category order), removes plan.drop and the source
// columns. Generated columns follow the untouched columns. A Missing source
// cell yields all zeros.
Table DummyEncode(const Table& table, const DummyPlan& plan);

// Maps "Class 1/2/3" to numeric 0/1/2. An already numeric column is rejected.
Table LabelEncodeTarget(const Table& table, const std::string& column = kTargetColumn);

// Everything needed to run the preparation and encoding steps for a dataset.
struct Preset {
  std::string name;
  std::vector<BinningSpec> bins;
  std::vector<std::string> drop_before_binning;
  std::vector<std::string> fill_missing_columns;
  std::string fill_label = "Missing";
  std::string decode_column;
  std::map<std::string, std::string> decode_map;
  std::vector<std::string> analysis_variables;
  std::vector<std::pair<std::string, std::string>> extra_pairs;
  std::vector<std::string> drop_after_analysis;
  DummyPlan dummy_plan;

  nlohmann::ordered_json ToJson() const;
  static Preset FromJson(const nlohmann::json& j);
};

// The built-in "veterans-t2dm" preset.
const Preset& VeteransT2dmPreset();
// Looks a preset up by name. Throws ConfigError when unknown.
const Preset& PresetByName(const std::string& name);

}  // namespace tabml

#endif  // TABML_PIPELINE_H_
