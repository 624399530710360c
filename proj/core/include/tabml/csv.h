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

// CSV dialect: comma separated, mandatory header, RFC 4180 double quoting,
// UTF-8 (a leading BOM is skipped), LF or CRLF line ends.
//
// Kind inference: a column is Numeric iff every non-empty unquoted field
// parses as a decimal number and no field is quoted. An unquoted empty
// field is Missing. A quoted field is always text, which is how the writer
// keeps numeric-looking categories categorical across a round trip. A
// categorical column with no present value at all reads back as Numeric
// unless a hint says otherwise.

#ifndef TABML_CSV_H_
#define TABML_CSV_H_

#include <map>
#include <string>
#include <string_view>

#include "tabml/table.h"

namespace tabml {

// Optional per-column kind overrides.
using ColumnHints = std::map<std::string, ColumnKind>;

Table ParseCsv(std::string_view text, const ColumnHints& hints = {});
Table ReadCsv(const std::string& path, const ColumnHints& hints = {});

std::string ToCsvString(const Table& table);
void WriteCsv(const Table& table, const std::string& path);

// Whole-file helpers shared by the CLI.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace tabml

#endif  // TABML_CSV_H_
