#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace brpqkd {

// 9 significant digits; scientific below 1e-3 in magnitude; '.' always.
std::string format_number(double x);

using Cell = std::variant<double, bool, std::int64_t, std::string>;

std::string format_cell(const Cell& cell);

// Column-ordered result table rendered as CSV or JSON. Numbers are rounded to
// their printed precision in both formats so the two never disagree.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);

  // Header row, comma separated, '\n' line endings.
  void write_csv(std::ostream& out) const;
  // A single object for one-row tables, otherwise an array of objects.
  void write_json(std::ostream& out) const;
};

// Splits CSV text (as written above) into rows of fields; first row is header.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace brpqkd
