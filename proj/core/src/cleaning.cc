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

#include "tabml/cleaning.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

#include "tabml/errors.h"

namespace tabml {
namespace {

// Canonical 64-bit key of a numeric cell (all NaNs collapse to one key).
uint64_t CellKey(const Column& c, size_t row) {
  double v = c.number(row);
  if (std::isnan(v)) return 0x7ff8000000000001ULL;
  if (v == 0.0) v = 0.0;
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

double RoundTo(double v, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(v * scale) / scale;
}

}  // namespace

Table DeduplicateKeepLast(const Table& table) {
  const size_t n = table.n_rows();
  const size_t m = table.n_cols();
  // Cells are renumbered per column to dense 32-bit ids to halve memory.
  std::vector<uint32_t> keys(n * m);
  std::vector<uint64_t> hashes(n);
  for (size_t j = 0; j < m; ++j) {
    const Column& c = table.column(j);
    if (c.is_categorical()) {
      for (size_t i = 0; i < n; ++i) keys[i * m + j] = static_cast<uint32_t>(c.code(i) + 1);
      continue;
    }
    std::unordered_map<uint64_t, uint32_t> ids;
    for (size_t i = 0; i < n; ++i) {
      auto it = ids.emplace(CellKey(c, i), static_cast<uint32_t>(ids.size())).first;
      keys[i * m + j] = it->second;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    uint64_t h = 1469598103934665603ULL;
    for (size_t j = 0; j < m; ++j) {
      h ^= keys[i * m + j];
      h *= 1099511628211ULL;
      h ^= h >> 29;
    }
    hashes[i] = h;
  }
  auto hash = [&](size_t i) { return static_cast<size_t>(hashes[i]); };
  auto eq = [&](size_t a, size_t b) {
    return std::equal(keys.begin() + a * m, keys.begin() + (a + 1) * m, keys.begin() + b * m);
  };
  std::unordered_set<size_t, decltype(hash), decltype(eq)> seen(n * 2 + 1, hash, eq);
  std::vector<size_t> keep;
  keep.reserve(n);
  for (size_t r = n; r-- > 0;) {
    if (seen.insert(r).second) keep.push_back(r);
  }
  if (keep.size() == n) return table;
  std::reverse(keep.begin(), keep.end());
  return table.take_rows(keep);
}

const MissingEntry& MissingSummary::at(const std::string& column) const {
  for (const auto& e : entries) {
    if (e.column == column) return e;
  }
  throw ConfigError("no missing-value entry for column '" + column + "'");
}

nlohmann::ordered_json MissingSummary::ToJson() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& e : entries) {
    j[e.column] = {{"total", e.total}, {"missing", e.missing}, {"pct", RoundTo(e.pct(), 2)}};
  }
  return j;
}

MissingSummary ComputeMissingSummary(const Table& table) {
  MissingSummary s;
  for (size_t j = 0; j < table.n_cols(); ++j) {
    s.entries.push_back({table.names()[j], table.n_rows(), table.column(j).missing_count()});
  }
  return s;
}

Table DropColumns(const Table& table, const std::vector<std::string>& names) {
  return table.without(names);
}

Table FillMissingWithLabel(const Table& table, const std::vector<std::string>& columns,
                           const std::string& label) {
  Table out = table;
  for (const auto& name : columns) {
    const Column& c = out.column(name);
    if (!c.is_categorical()) {
      throw ConfigError("cannot fill column '" + name + "' with a label: it is numeric (bin it first)");
    }
    if (c.missing_count() == 0) continue;
    std::vector<std::string> dict = c.categories();
    int32_t label_code = c.find_category(label);
    if (label_code == Column::kMissingCode) {
      label_code = static_cast<int32_t>(dict.size());
      dict.push_back(label);
    }
    std::vector<int32_t> codes = c.codes();
    for (int32_t& code : codes) {
      if (code == Column::kMissingCode) code = label_code;
    }
    out = out.with_column(name, Column::FromCodes(std::move(dict), std::move(codes)));
  }
  return out;
}

Table DecodeValues(const Table& table, const std::string& column,
                   const std::map<std::string, std::string>& mapping) {
  const Column& c = table.column(column);
  std::vector<std::optional<std::string>> values(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (c.is_missing(i)) continue;
    const std::string key = c.text(i);
    auto it = mapping.find(key);
    if (it == mapping.end()) {
      throw DataError("column '" + column + "' has unmapped value '" + key + "' at row " +
                      std::to_string(i));
    }
    values[i] = it->second;
  }
  return table.with_column(column, Column::Categorical(values));
}

}  // namespace tabml
