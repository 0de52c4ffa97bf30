// Copyright 2026 The Stabscore Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stabscore/errors.hpp"
#include "stabscore/rational.hpp"

#ifndef STABSCORE_VERSION
#define STABSCORE_VERSION "0.1.0"
#endif

namespace stabscore::harness {

using stabscore::to_string;

inline constexpr const char* kVersion = STABSCORE_VERSION;

enum class CellType { integer, rational, real, text };

inline const char* to_string(CellType t) {
  switch (t) {
    case CellType::integer: return "integer";
    case CellType::rational: return "rational";
    case CellType::real: return "real";
    case CellType::text: return "text";
  }
  return "text";
}

inline CellType parse_cell_type(std::string_view s) {
  if (s == "integer") return CellType::integer;
  if (s == "rational") return CellType::rational;
  if (s == "real") return CellType::real;
  if (s == "text") return CellType::text;
  throw InvalidInput("unknown column type: " + std::string(s));
}

using Cell = std::variant<std::int64_t, Rational, double, std::string>;

struct Column {
  std::string name;
  CellType type = CellType::text;
  friend bool operator==(const Column&, const Column&) = default;
};

/// Typed rows plus a provenance block (config echo, seed, version). The
/// optional report holds structured sections that do not fit a flat table;
/// it is only emitted in JSON.
struct ResultTable {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;
  nlohmann::ordered_json report;

  void add_row(std::vector<Cell> row) {
    detail::require(row.size() == columns.size(), "row width does not match the column count");
    for (std::size_t c = 0; c < row.size(); ++c)
      detail::require(row[c].index() == static_cast<std::size_t>(columns[c].type),
                      "cell type does not match column " + columns[c].name);
    rows.push_back(std::move(row));
  }

  void set_provenance(const std::string& key, const std::string& value) {
    for (auto& [k, v] : provenance)
      if (k == key) {
        v = value;
        return;
      }
    provenance.emplace_back(key, value);
  }

  const std::string* provenance_value(const std::string& key) const {
    for (const auto& [k, v] : provenance)
      if (k == key) return &v;
    return nullptr;
  }

  bool truncated() const {
    const auto* v = provenance_value("truncated");
    return v && *v == "true";
  }
};

namespace impl {

inline std::string format_real(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

inline std::string cell_text(const Cell& cell) {
  switch (cell.index()) {
    case 0: return std::to_string(std::get<std::int64_t>(cell));
    case 1: return to_string(std::get<Rational>(cell));
    case 2: return format_real(std::get<double>(cell));
    default: return std::get<std::string>(cell);
  }
}

inline Cell parse_cell(const std::string& text, CellType type) {
  try {
    std::size_t used = 0;
    switch (type) {
      case CellType::integer: {
        const long long v = std::stoll(text, &used);
        if (used == text.size()) return static_cast<std::int64_t>(v);
        break;
      }
      case CellType::rational: return parse_rational(text);
      case CellType::real: {
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
        break;
      }
      case CellType::text: return text;
    }
  } catch (const InvalidInput&) {
    throw;
  } catch (const std::exception&) {
  }
  throw InvalidInput("malformed " + std::string(to_string(type)) + " cell: " + text);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  detail::require(!quoted, "unterminated quoted CSV field");
  return out;
}

inline nlohmann::ordered_json cell_json(const Cell& cell) {
  switch (cell.index()) {
    case 0: return std::get<std::int64_t>(cell);
    case 1: return to_string(std::get<Rational>(cell));
    case 2: return std::get<double>(cell);
    default: return std::get<std::string>(cell);
  }
}

}  // namespace impl

/// Provenance goes in leading "# key=value" comment lines, followed by a
/// "# column-types=" line. With decimal_columns, every rational column gets a
/// companion "<name>_decimal" column for plotting; parsers drop it.
inline std::string to_csv(const ResultTable& t, bool decimal_columns = false) {
  std::ostringstream os;
  for (const auto& [k, v] : t.provenance) os << "# " << k << "=" << v << "\n";
  std::vector<std::string> types;
  std::vector<std::string> names;
  for (const auto& c : t.columns) {
    names.push_back(impl::csv_escape(c.name));
    types.emplace_back(to_string(c.type));
    if (decimal_columns && c.type == CellType::rational) {
      names.push_back(impl::csv_escape(c.name + "_decimal"));
      types.emplace_back("decimal");
    }
  }
  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out;
  };
  os << "# column-types=" << join(types) << "\n";
  os << join(names) << "\n";
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < row.size(); ++c) {
      cells.push_back(impl::csv_escape(impl::cell_text(row[c])));
      if (decimal_columns && t.columns[c].type == CellType::rational)
        cells.push_back(impl::format_real(to_double(std::get<Rational>(row[c]))));
    }
    os << join(cells) << "\n";
  }
  return os.str();
}

inline ResultTable parse_csv(std::string_view text) {
  ResultTable t;
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<std::string> types;
  bool have_header = false;
  std::vector<bool> keep;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      detail::require(eq != std::string::npos, "malformed provenance line: " + line);
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "column-types") types = value.empty() ? std::vector<std::string>{} : impl::csv_split(value);
      else t.provenance.emplace_back(key, value);
      continue;
    }
    if (!have_header) {
      have_header = true;
      const auto names = line.empty() ? std::vector<std::string>{} : impl::csv_split(line);
      if (types.empty()) types.assign(names.size(), "text");
      detail::require(types.size() == names.size(), "column-types does not match the header");
      for (std::size_t c = 0; c < names.size(); ++c) {
        keep.push_back(types[c] != "decimal");
        if (keep.back()) t.columns.push_back({names[c], parse_cell_type(types[c])});
      }
      continue;
    }
    const auto fields = impl::csv_split(line);
    detail::require(fields.size() == keep.size(), "CSV row width does not match the header");
    std::vector<Cell> row;
    for (std::size_t c = 0, col = 0; c < fields.size(); ++c) {
      if (!keep[c]) continue;
      row.push_back(impl::parse_cell(fields[c], t.columns[col++].type));
    }
    t.add_row(std::move(row));
  }
  detail::require(have_header, "CSV has no header line");
  return t;
}

inline std::string to_json(const ResultTable& t) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json prov = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.provenance) prov[k] = v;
  doc["provenance"] = prov;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", to_string(c.type)}});
  doc["columns"] = cols;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(impl::cell_json(cell));
    rows.push_back(r);
  }
  doc["rows"] = rows;
  if (!t.report.is_null()) doc["report"] = t.report;
  return doc.dump(2) + "\n";
}

inline ResultTable parse_json(std::string_view text) {
  const auto doc = nlohmann::ordered_json::parse(text);
  ResultTable t;
  if (doc.contains("provenance"))
    for (const auto& [k, v] : doc.at("provenance").items()) t.provenance.emplace_back(k, v.get<std::string>());
  for (const auto& c : doc.at("columns"))
    t.columns.push_back({c.at("name").get<std::string>(), parse_cell_type(c.at("type").get<std::string>())});
  for (const auto& r : doc.at("rows")) {
    detail::require(r.size() == t.columns.size(), "JSON row width does not match the columns");
    std::vector<Cell> row;
    for (std::size_t c = 0; c < r.size(); ++c) {
      switch (t.columns[c].type) {
        case CellType::integer: row.emplace_back(r[c].get<std::int64_t>()); break;
        case CellType::rational: row.emplace_back(parse_rational(r[c].get<std::string>())); break;
        case CellType::real: row.emplace_back(r[c].get<double>()); break;
        case CellType::text: row.emplace_back(r[c].get<std::string>()); break;
      }
    }
    t.add_row(std::move(row));
  }
  if (doc.contains("report")) t.report = doc.at("report");
  return t;
}

inline bool same_data(const ResultTable& a, const ResultTable& b) {
  return a.columns == b.columns && a.rows == b.rows && a.provenance == b.provenance;
}

}  // namespace stabscore::harness
