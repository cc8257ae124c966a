#include "coopmac/dataset.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "coopmac/errors.hpp"
#include "json.hpp"

namespace coopmac {
namespace {

std::string format_double(double v, ColumnKind kind) {
  char buf[64];
  const auto res = kind == ColumnKind::mbps
                       ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4)
                       : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string format_cell(const Cell& cell, ColumnKind kind) {
  return std::visit(
      [kind](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return {};
        else if constexpr (std::is_same_v<T, double>) return format_double(v, kind);
        else if constexpr (std::is_same_v<T, std::uint64_t>) return std::to_string(v);
        else return quote(v);
      },
      cell);
}

// Splits one CSV record starting at `pos`; advances past its newline.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          fields.back() += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c == '\n') {
      return fields;
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw InvalidParameter("unterminated quoted CSV field");
  return fields;
}

Cell parse_cell(const std::string& field, ColumnKind kind, const std::string& column) {
  if (field.empty()) return std::monostate{};
  const char* first = field.data();
  const char* last = first + field.size();
  switch (kind) {
    case ColumnKind::mbps:
    case ColumnKind::real: {
      double v = 0.0;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{} || res.ptr != last) {
        throw InvalidParameter("column " + column + ": '" + field + "' is not a number");
      }
      return v;
    }
    case ColumnKind::integer: {
      std::uint64_t v = 0;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc{} || res.ptr != last) {
        throw InvalidParameter("column " + column + ": '" + field + "' is not an integer");
      }
      return v;
    }
    case ColumnKind::text: return field;
  }
  return std::monostate{};
}

}  // namespace

std::size_t Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw InvalidParameter("no column named '" + std::string(name) + "'");
}

const Cell& Dataset::at(std::size_t row, std::string_view name) const {
  return rows.at(row).at(column_index(name));
}

double Dataset::number(std::size_t row, std::string_view name) const {
  const Cell& c = at(row, name);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return static_cast<double>(*u);
  return std::numeric_limits<double>::quiet_NaN();
}

std::string to_csv(const Dataset& data) {
  std::string out;
  for (std::size_t i = 0; i < data.columns.size(); ++i) {
    if (i) out += ',';
    out += quote(data.columns[i].name);
  }
  out += '\n';
  for (const auto& row : data.rows) {
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
      if (i) out += ',';
      if (i < row.size()) out += format_cell(row[i], data.columns[i].kind);
    }
    out += '\n';
  }
  return out;
}

Dataset parse_csv(std::string_view text, const std::vector<Column>& columns) {
  Dataset data;
  data.columns = columns;
  std::size_t pos = 0;
  const auto header = read_record(text, pos);
  if (header.size() != columns.size()) {
    throw InvalidParameter("CSV header has " + std::to_string(header.size()) +
                           " columns, expected " + std::to_string(columns.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != columns[i].name) {
      throw InvalidParameter("CSV column " + std::to_string(i) + " is '" + header[i] +
                             "', expected '" + columns[i].name + "'");
    }
  }
  while (pos < text.size()) {
    const auto fields = read_record(text, pos);
    if (fields.size() != columns.size()) {
      throw InvalidParameter("CSV row " + std::to_string(data.rows.size() + 1) + " has " +
                             std::to_string(fields.size()) + " fields");
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      row.push_back(parse_cell(fields[i], columns[i].kind, columns[i].name));
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

std::string to_json(const Dataset& data) {
  nlohmann::ordered_json doc;
  doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : data.columns) doc["columns"].push_back(c.name);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : data.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
      const Cell empty;
      const Cell& cell = i < row.size() ? row[i] : empty;
      auto& slot = obj[data.columns[i].name];
      std::visit(
          [&slot](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              slot = nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) slot = v;
              else slot = nullptr;
            } else {
              slot = v;
            }
          },
          cell);
    }
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

void stamp_provenance(Dataset& data, std::uint64_t seed, std::string_view config_hash) {
  data.columns.push_back({"seed", ColumnKind::integer});
  data.columns.push_back({"config_hash", ColumnKind::text});
  for (auto& row : data.rows) {
    row.resize(data.columns.size() - 2);
    row.emplace_back(seed);
    row.emplace_back(std::string(config_hash));
  }
}

}  // namespace coopmac
