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

#include "tabml/table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <numeric>

#include "tabml/errors.h"

namespace tabml {

const char* ColumnKindName(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "";
  if (value == 0.0) return "0";  // Folds -0.
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<double> ParseNumber(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  if (begin == end) return std::nullopt;
  // from_chars would accept "inf", "nan" and friends.
  for (const char* p = begin; p != end; ++p) {
    const char c = *p;
    if (!((c >= '0' && c <= '9') || c == '.' || c == '-' || c == 'e' || c == 'E' || c == '+')) {
      return std::nullopt;
    }
  }
  double value = 0.0;
  auto res = std::from_chars(begin, end, value, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

Column Column::Numeric(std::vector<double> values) {
  Column c;
  c.kind_ = ColumnKind::kNumeric;
  c.numeric_ = std::make_shared<NumericData>(NumericData{std::move(values)});
  return c;
}

Column Column::Categorical(const std::vector<std::optional<std::string>>& values) {
  std::unordered_map<std::string, int32_t> lookup;
  std::vector<std::string> dict;
  std::vector<int32_t> codes(values.size(), kMissingCode);
  for (size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    auto [it, inserted] = lookup.emplace(*values[i], static_cast<int32_t>(dict.size()));
    if (inserted) dict.push_back(*values[i]);
    codes[i] = it->second;
  }
  return FromCodes(std::move(dict), std::move(codes));
}

Column Column::FromCodes(std::vector<std::string> dictionary, std::vector<int32_t> codes) {
  const int32_t n_dict = static_cast<int32_t>(dictionary.size());
  std::vector<char> used(dictionary.size(), 0);
  for (int32_t code : codes) {
    if (code == kMissingCode) continue;
    if (code < 0 || code >= n_dict) throw DataError("category code out of range");
    used[code] = 1;
  }
  std::vector<int32_t> order;
  for (int32_t i = 0; i < n_dict; ++i) {
    if (used[i]) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](int32_t a, int32_t b) { return dictionary[a] < dictionary[b]; });
  std::vector<int32_t> remap(dictionary.size(), kMissingCode);
  std::vector<std::string> sorted;
  sorted.reserve(order.size());
  for (size_t k = 0; k < order.size(); ++k) {
    if (!sorted.empty() && sorted.back() == dictionary[order[k]]) {
      remap[order[k]] = static_cast<int32_t>(sorted.size() - 1);
      continue;
    }
    remap[order[k]] = static_cast<int32_t>(sorted.size());
    sorted.push_back(std::move(dictionary[order[k]]));
  }
  for (int32_t& code : codes) {
    if (code != kMissingCode) code = remap[code];
  }
  Column c;
  c.kind_ = ColumnKind::kCategorical;
  c.categorical_ =
      std::make_shared<CategoricalData>(CategoricalData{std::move(sorted), std::move(codes)});
  return c;
}

size_t Column::size() const {
  return is_numeric() ? numeric_->values.size() : categorical_->codes.size();
}

bool Column::is_missing(size_t row) const {
  return is_numeric() ? std::isnan(numeric_->values[row])
                      : categorical_->codes[row] == kMissingCode;
}

size_t Column::missing_count() const {
  size_t n = 0;
  if (is_numeric()) {
    for (double v : numeric_->values) n += std::isnan(v) ? 1 : 0;
  } else {
    for (int32_t c : categorical_->codes) n += c == kMissingCode ? 1 : 0;
  }
  return n;
}

const std::vector<double>& Column::numeric() const {
  if (!is_numeric()) throw DataError("column is categorical, expected numeric");
  return numeric_->values;
}

const std::vector<std::string>& Column::categories() const {
  if (!is_categorical()) throw DataError("column is numeric, expected categorical");
  return categorical_->categories;
}

const std::vector<int32_t>& Column::codes() const {
  if (!is_categorical()) throw DataError("column is numeric, expected categorical");
  return categorical_->codes;
}

int32_t Column::find_category(std::string_view category) const {
  const auto& cats = categories();
  auto it = std::lower_bound(cats.begin(), cats.end(), category);
  if (it == cats.end() || *it != category) return kMissingCode;
  return static_cast<int32_t>(it - cats.begin());
}

std::string Column::text(size_t row) const {
  if (is_numeric()) return FormatNumber(numeric_->values[row]);
  const int32_t c = categorical_->codes[row];
  return c == kMissingCode ? std::string() : categorical_->categories[c];
}

Column Column::take(const std::vector<size_t>& rows) const {
  if (is_numeric()) {
    std::vector<double> out(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) out[i] = numeric_->values[rows[i]];
    return Numeric(std::move(out));
  }
  std::vector<int32_t> out(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) out[i] = categorical_->codes[rows[i]];
  return FromCodes(categorical_->categories, std::move(out));
}

bool Column::equals(const Column& other) const {
  if (kind_ != other.kind_ || size() != other.size()) return false;
  if (is_numeric()) {
    const auto& a = numeric_->values;
    const auto& b = other.numeric_->values;
    for (size_t i = 0; i < a.size(); ++i) {
      if (std::isnan(a[i]) != std::isnan(b[i])) return false;
      if (!std::isnan(a[i]) && a[i] != b[i]) return false;
    }
    return true;
  }
  return categorical_->categories == other.categorical_->categories &&
         categorical_->codes == other.categorical_->codes;
}

Table::Table(std::vector<std::string> names, std::vector<Column> columns)
    : names_(std::move(names)), columns_(std::move(columns)) {
  if (names_.size() != columns_.size()) throw ConfigError("names and columns differ in count");
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw ConfigError("duplicate column name '" + names_[i] + "'");
    }
  }
  n_rows_ = columns_.empty() ? 0 : columns_[0].size();
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].size() != n_rows_) {
      throw DataError("column '" + names_[i] + "' has " + std::to_string(columns_[i].size()) +
                      " rows, expected " + std::to_string(n_rows_));
    }
  }
}

bool Table::has_column(std::string_view name) const {
  return index_.count(std::string(name)) > 0;
}

size_t Table::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ConfigError("unknown column '" + std::string(name) + "'");
  return it->second;
}

const Column& Table::column(std::string_view name) const { return columns_[index_of(name)]; }

Table Table::with_column(const std::string& name, Column col) const {
  auto names = names_;
  auto cols = columns_;
  auto it = index_.find(name);
  if (it != index_.end()) {
    cols[it->second] = std::move(col);
  } else {
    names.push_back(name);
    cols.push_back(std::move(col));
  }
  return Table(std::move(names), std::move(cols));
}

Table Table::without(const std::vector<std::string>& drop) const {
  std::vector<char> gone(columns_.size(), 0);
  for (const auto& name : drop) gone[index_of(name)] = 1;
  std::vector<std::string> names;
  std::vector<Column> cols;
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (gone[i]) continue;
    names.push_back(names_[i]);
    cols.push_back(columns_[i]);
  }
  Table out(std::move(names), std::move(cols));
  if (out.n_cols() == 0) out.n_rows_ = n_rows_;
  return out;
}

Table Table::select(const std::vector<std::string>& keep) const {
  std::vector<Column> cols;
  cols.reserve(keep.size());
  for (const auto& name : keep) cols.push_back(column(name));
  return Table(keep, std::move(cols));
}

Table Table::take_rows(const std::vector<size_t>& rows) const {
  for (size_t r : rows) {
    if (r >= n_rows_) throw ConfigError("row index " + std::to_string(r) + " out of range");
  }
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) cols.push_back(c.take(rows));
  Table out(names_, std::move(cols));
  if (out.n_cols() == 0) out.n_rows_ = rows.size();
  return out;
}

Table Table::move_to_end(const std::string& name) const {
  const size_t idx = index_of(name);
  auto names = names_;
  auto cols = columns_;
  names.erase(names.begin() + idx);
  cols.erase(cols.begin() + idx);
  names.push_back(name);
  cols.push_back(columns_[idx]);
  return Table(std::move(names), std::move(cols));
}

bool Table::equals(const Table& other) const {
  if (names_ != other.names_ || n_rows_ != other.n_rows_) return false;
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (!columns_[i].equals(other.columns_[i])) return false;
  }
  return true;
}

Eigen::MatrixXd ToMatrix(const Table& table, const std::vector<std::string>& features) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(table.n_rows()),
                    static_cast<Eigen::Index>(features.size()));
  for (size_t j = 0; j < features.size(); ++j) {
    const Column& col = table.column(features[j]);
    if (!col.is_numeric()) {
      throw DataError("feature '" + features[j] + "' is categorical; encode it first");
    }
    const auto& v = col.numeric();
    for (size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i])) {
        throw DataError("feature '" + features[j] + "' has a missing or non-finite value at row " +
                        std::to_string(i));
      }
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
    }
  }
  return X;
}

std::vector<int> ToLabels(const Column& column) {
  if (!column.is_numeric()) throw DataError("target column is not label-encoded");
  const auto& v = column.numeric();
  std::vector<int> y(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0) || v[i] != std::floor(v[i]) || v[i] > 1e6) {
      throw DataError("target value at row " + std::to_string(i) + " is not a class code");
    }
    y[i] = static_cast<int>(v[i]);
  }
  return y;
}

}  // namespace tabml
