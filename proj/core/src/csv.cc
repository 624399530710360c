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

#include "tabml/csv.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "tabml/errors.h"

namespace tabml {
namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

// Streaming record splitter. Tracks physical line numbers for diagnostics.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  // Reads one record into `out`. Returns false at end of input.
  bool Next(std::vector<Field>* out) {
    out->clear();
    if (pos_ >= text_.size()) return false;
    record_line_ = line_;
    Field field;
    bool at_field_start = true;
    while (true) {
      if (pos_ >= text_.size()) {
        out->push_back(std::move(field));
        return true;
      }
      const char c = text_[pos_];
      if (at_field_start && c == '"') {
        field.quoted = true;
        ++pos_;
        ReadQuoted(&field.text);
        at_field_start = false;
        continue;
      }
      if (c == ',') {
        out->push_back(std::move(field));
        field = Field();
        at_field_start = true;
        ++pos_;
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++pos_;
        ++pos_;
        ++line_;
        out->push_back(std::move(field));
        return true;
      }
      if (field.quoted) {
        throw DataError("unexpected character after closing quote at line " +
                        std::to_string(record_line_));
      }
      field.text.push_back(c);
      at_field_start = false;
      ++pos_;
    }
  }

  size_t record_line() const { return record_line_; }

 private:
  void ReadQuoted(std::string* out) {
    while (true) {
      if (pos_ >= text_.size()) {
        throw DataError("unterminated quoted field starting at line " +
                        std::to_string(record_line_));
      }
      const char c = text_[pos_++];
      if (c == '"') {
        if (pos_ < text_.size() && text_[pos_] == '"') {
          out->push_back('"');
          ++pos_;
          continue;
        }
        return;
      }
      if (c == '\n') ++line_;
      out->push_back(c);
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t record_line_ = 1;
};

// Per-column dictionary of distinct (quoted, text) tokens.
struct ColumnBuilder {
  std::unordered_map<std::string, int32_t> lookup;
  std::vector<Field> tokens;
  std::vector<int32_t> ids;  // -1 = unquoted empty field.
  bool any_quoted = false;

  void Add(Field&& f) {
    if (!f.quoted && f.text.empty()) {
      ids.push_back(-1);
      return;
    }
    any_quoted |= f.quoted;
    std::string key;
    key.reserve(f.text.size() + 1);
    key.push_back(f.quoted ? 'q' : 'u');
    key.append(f.text);
    auto [it, inserted] = lookup.emplace(std::move(key), static_cast<int32_t>(tokens.size()));
    if (inserted) tokens.push_back(std::move(f));
    ids.push_back(it->second);
  }
};

bool NeedsQuoting(std::string_view s) {
  if (s.empty()) return true;
  if (s.find_first_of(",\"\r\n") != std::string_view::npos) return true;
  return ParseNumber(s).has_value();
}

void AppendQuoted(std::string* out, std::string_view s) {
  out->push_back('"');
  for (char c : s) {
    if (c == '"') out->push_back('"');
    out->push_back(c);
  }
  out->push_back('"');
}

void AppendHeaderName(std::string* out, std::string_view s) {
  if (s.find_first_of(",\"\r\n") != std::string_view::npos || s.empty()) {
    AppendQuoted(out, s);
  } else {
    out->append(s);
  }
}

}  // namespace

Table ParseCsv(std::string_view text, const ColumnHints& hints) {
  Reader reader(text);
  std::vector<Field> record;
  if (!reader.Next(&record)) throw DataError("CSV input is empty; a header row is required");
  std::vector<std::string> names;
  for (auto& f : record) names.push_back(std::move(f.text));
  for (const auto& [name, kind] : hints) {
    (void)kind;
    bool found = false;
    for (const auto& n : names) found |= (n == name);
    if (!found) throw ConfigError("schema hint names unknown column '" + name + "'");
  }

  std::vector<ColumnBuilder> builders(names.size());
  size_t row = 0;
  while (reader.Next(&record)) {
    // A bare trailing newline yields a single empty field; skip blank lines.
    if (record.size() == 1 && !record[0].quoted && record[0].text.empty() && names.size() != 1) {
      continue;
    }
    if (record.size() != names.size()) {
      throw DataError("ragged row " + std::to_string(row) + " (line " +
                      std::to_string(reader.record_line()) + "): " +
                      std::to_string(record.size()) + " fields, header has " +
                      std::to_string(names.size()));
    }
    for (size_t j = 0; j < record.size(); ++j) builders[j].Add(std::move(record[j]));
    ++row;
  }

  std::vector<Column> columns;
  columns.reserve(names.size());
  for (size_t j = 0; j < names.size(); ++j) {
    ColumnBuilder& b = builders[j];
    auto hint = hints.find(names[j]);
    bool numeric = false;
    std::vector<double> token_values;
    if (hint == hints.end() || hint->second == ColumnKind::kNumeric) {
      const bool forced = hint != hints.end();
      numeric = !b.any_quoted || forced;
      token_values.resize(b.tokens.size());
      for (size_t t = 0; numeric && t < b.tokens.size(); ++t) {
        auto v = ParseNumber(b.tokens[t].text);
        if (!v) {
          if (forced) {
            throw DataError("column '" + names[j] + "' is declared numeric but holds '" +
                            b.tokens[t].text + "'");
          }
          numeric = false;
          break;
        }
        token_values[t] = *v;
      }
    }
    if (numeric) {
      std::vector<double> values(b.ids.size());
      for (size_t i = 0; i < b.ids.size(); ++i) {
        values[i] = b.ids[i] < 0 ? std::numeric_limits<double>::quiet_NaN() : token_values[b.ids[i]];
      }
      columns.push_back(Column::Numeric(std::move(values)));
    } else {
      std::vector<std::string> dict;
      dict.reserve(b.tokens.size());
      for (auto& t : b.tokens) dict.push_back(std::move(t.text));
      columns.push_back(Column::FromCodes(std::move(dict), std::move(b.ids)));
    }
    b = ColumnBuilder();
  }
  Table out(std::move(names), std::move(columns));
  return out;
}

Table ReadCsv(const std::string& path, const ColumnHints& hints) {
  return ParseCsv(ReadFile(path), hints);
}

std::string ToCsvString(const Table& table) {
  std::string out;
  const auto& names = table.names();
  for (size_t j = 0; j < names.size(); ++j) {
    if (j) out.push_back(',');
    AppendHeaderName(&out, names[j]);
  }
  out.push_back('\n');
  // Pre-render each category once.
  std::vector<std::vector<std::string>> rendered(names.size());
  for (size_t j = 0; j < names.size(); ++j) {
    const Column& c = table.column(j);
    if (!c.is_categorical()) continue;
    for (const auto& cat : c.categories()) {
      std::string s;
      if (NeedsQuoting(cat)) {
        AppendQuoted(&s, cat);
      } else {
        s = cat;
      }
      rendered[j].push_back(std::move(s));
    }
  }
  for (size_t i = 0; i < table.n_rows(); ++i) {
    for (size_t j = 0; j < names.size(); ++j) {
      if (j) out.push_back(',');
      const Column& c = table.column(j);
      if (c.is_numeric()) {
        out.append(FormatNumber(c.number(i)));
      } else {
        const int32_t code = c.code(i);
        if (code != Column::kMissingCode) out.append(rendered[j][code]);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void WriteCsv(const Table& table, const std::string& path) { WriteFile(path, ToCsvString(table)); }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw DataError("read failure on '" + path + "'");
  return std::move(ss).str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failure on '" + path + "'");
}

}  // namespace tabml
