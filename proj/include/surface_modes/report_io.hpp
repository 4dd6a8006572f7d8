#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace surface_modes::report {

/// A missing value is std::monostate: empty in CSV, null in JSON.
using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form; non-finite values become "nan", "inf"
/// or "-inf".
std::string format_double(double value);

/// Optional comment line (written as "# ..."), header, then rows.
void write_csv(std::ostream& os, const Table& table, const std::string& comment = {});

/// {"config": config, "rows": [{column: value, ...}, ...]}.
nlohmann::ordered_json to_json(const nlohmann::ordered_json& config, const Table& table);
void write_json(std::ostream& os, const nlohmann::ordered_json& config, const Table& table);

}  // namespace surface_modes::report
