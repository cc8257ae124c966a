#pragma once

// Tabular results and their CSV / JSON encodings.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace coopmac {

/// mbps: fixed 4 decimals in CSV. real: shortest round-trip form.
enum class ColumnKind { mbps, real, integer, text };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::real;
  friend bool operator==(const Column&, const Column&) = default;
};

/// Empty cells are monostate: blank in CSV, null in JSON.
using Cell = std::variant<std::monostate, double, std::uint64_t, std::string>;

struct Dataset {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column_index(std::string_view name) const;  // throws if absent
  const Cell& at(std::size_t row, std::string_view name) const;
  /// Numeric view of a cell; NaN when empty.
  double number(std::size_t row, std::string_view name) const;
};

/// Header row, comma separated, '\n' line endings, '.' decimal point
/// regardless of locale.
std::string to_csv(const Dataset& data);

/// Reads text produced by to_csv. The header must match `columns`.
Dataset parse_csv(std::string_view text, const std::vector<Column>& columns);

/// {"columns": [...], "rows": [{name: value, ...}, ...]} with doubles at full
/// precision.
std::string to_json(const Dataset& data);

/// Appends seed and config_hash columns to every row.
void stamp_provenance(Dataset& data, std::uint64_t seed, std::string_view config_hash);

}  // namespace coopmac
