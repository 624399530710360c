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

#ifndef TABML_CLEANING_H_
#define TABML_CLEANING_H_

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tabml/table.h"

namespace tabml {

// Collapses rows identical across all columns (header order, Missing equal to
// Missing) to their last occurrence. Survivors keep their relative order.
Table DeduplicateKeepLast(const Table& table);

struct MissingEntry {
  std::string column;
  size_t total = 0;
  size_t missing = 0;
  double pct() const { return total == 0 ? 0.0 : 100.0 * static_cast<double>(missing) / total; }
};

struct MissingSummary {
  std::vector<MissingEntry> entries;  // Table column order.

  const MissingEntry& at(const std::string& column) const;
  // {"column": {"total": n, "missing": m, "pct": x}}, pct rounded to 2 places.
  nlohmann::ordered_json ToJson() const;
};

MissingSummary ComputeMissingSummary(const Table& table);

Table DropColumns(const Table& table, const std::vector<std::string>& names);

// Replaces Missing with `label` in categorical columns. Numeric columns are
// rejected: bin them first.
Table FillMissingWithLabel(const Table& table, const std::vector<std::string>& columns,
                           const std::string& label);

// Rewrites a column through `mapping` (keyed by the cell's text rendering, so
// numeric 1 is looked up as "1"). The result is categorical.
Table DecodeValues(const Table& table, const std::string& column,
                   const std::map<std::string, std::string>& mapping);

}  // namespace tabml

#endif  // TABML_CLEANING_H_
