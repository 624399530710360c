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

// Column-oriented, immutable in-memory table.
//
// A column is either Numeric (double, NaN = missing) or Categorical
// (dictionary encoded: sorted category strings plus one int32 code per row,
// -1 = missing). Column payloads are shared between tables, so "modifying"
// operations that return a new Table are cheap for untouched columns.

#ifndef TABML_TABLE_H_
#define TABML_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace tabml {

enum class ColumnKind { kNumeric, kCategorical };

const char* ColumnKindName(ColumnKind kind);

class Column {
 public:
  static constexpr int32_t kMissingCode = -1;

  // NaN entries are missing.
  static Column Numeric(std::vector<double> values);

  // Builds a categorical column from per-row strings; nullopt is missing.
  static Column Categorical(const std::vector<std::optional<std::string>>& values);

  // Builds from a dictionary and codes. Unused categories are removed and the
  // dictionary is sorted, so the category set always equals the set of
  // distinct present values.
  static Column FromCodes(std::vector<std::string> dictionary, std::vector<int32_t> codes);

  ColumnKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == ColumnKind::kNumeric; }
  bool is_categorical() const { return kind_ == ColumnKind::kCategorical; }
  size_t size() const;

  bool is_missing(size_t row) const;
  size_t missing_count() const;

  // Numeric accessors. Throw DataError on a categorical column.
  const std::vector<double>& numeric() const;
  double number(size_t row) const { return numeric()[row]; }

  // Categorical accessors. Throw DataError on a numeric column.
  const std::vector<std::string>& categories() const;
  const std::vector<int32_t>& codes() const;
  int32_t code(size_t row) const { return codes()[row]; }
  // Code of `category`, or kMissingCode when absent.
  int32_t find_category(std::string_view category) const;

  // Text rendering of a cell. Numbers use the shortest round-trip form;
  // missing renders as the empty string.
  std::string text(size_t row) const;

  // Rows `rows` of this column, in that order.
  Column take(const std::vector<size_t>& rows) const;

  // True when both columns have the same kind and cell values.
  bool equals(const Column& other) const;

 private:
  struct NumericData {
    std::vector<double> values;
  };
  struct CategoricalData {
    std::vector<std::string> categories;
    std::vector<int32_t> codes;
  };

  ColumnKind kind_ = ColumnKind::kNumeric;
  std::shared_ptr<const NumericData> numeric_;
  std::shared_ptr<const CategoricalData> categorical_;
};

// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

// Parses a decimal number. Accepts an optional sign and exponent; rejects
// inf/nan spellings, hex and surrounding whitespace.
std::optional<double> ParseNumber(std::string_view text);

class Table {
 public:
  Table() = default;

  // Throws ConfigError on duplicate names or DataError on unequal lengths.
  Table(std::vector<std::string> names, std::vector<Column> columns);

  size_t n_rows() const { return n_rows_; }
  size_t n_cols() const { return columns_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool has_column(std::string_view name) const;
  // Throws ConfigError when absent.
  size_t index_of(std::string_view name) const;
  const Column& column(std::string_view name) const;
  const Column& column(size_t index) const { return columns_[index]; }

  // New table with `col` appended (or replacing a same-named column in place).
  Table with_column(const std::string& name, Column col) const;
  // New table without the named columns. Unknown names throw ConfigError.
  Table without(const std::vector<std::string>& names) const;
  // New table with only the named columns, in the given order.
  Table select(const std::vector<std::string>& names) const;
  // New table holding `rows` in that order.
  Table take_rows(const std::vector<size_t>& rows) const;
  // Moves `name` to the last position.
  Table move_to_end(const std::string& name) const;

  bool equals(const Table& other) const;

 private:
  std::vector<std::string> names_;
  std::vector<Column> columns_;
  std::unordered_map<std::string, size_t> index_;
  size_t n_rows_ = 0;
};

// Dense feature matrix (rows = samples) built from numeric, fully populated
// columns. Throws DataError on categorical or missing entries.
Eigen::MatrixXd ToMatrix(const Table& table, const std::vector<std::string>& features);

// Integer class codes of a numeric column holding 0..C-1.
std::vector<int> ToLabels(const Column& column);

}  // namespace tabml

#endif  // TABML_TABLE_H_
