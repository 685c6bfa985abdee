#include "brpqkd/table.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace brpqkd {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  if (std::fabs(x) < 1e-3) return fmt::format("{:.8e}", x);
  return fmt::format("{:.9g}", x);
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, cell);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
  rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void Table::write_json(std::ostream& out) const {
  using nlohmann::ordered_json;
  auto to_json = [](const Cell& cell) -> ordered_json {
    if (const auto* d = std::get_if<double>(&cell)) {
      if (!std::isfinite(*d)) return format_number(*d);
      const std::string printed = format_number(*d);
      double rounded = 0.0;
      std::from_chars(printed.data(), printed.data() + printed.size(), rounded);
      return rounded;
    }
    if (const auto* b = std::get_if<bool>(&cell)) return *b;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    return std::get<std::string>(cell);
  };

  auto object = [&](const std::vector<Cell>& row) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[columns[i]] = to_json(row[i]);
    return o;
  };

  ordered_json doc;
  if (rows.size() == 1) {
    doc = object(rows.front());
  } else {
    doc = ordered_json::array();
    for (const auto& row : rows) doc.push_back(object(row));
  }
  out << doc.dump(2) << '\n';
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::vector<std::string> fields;
    std::size_t start = pos;
    for (;;) {
      const auto comma = text.find(',', start);
      if (comma == std::string::npos || comma > end) {
        fields.push_back(text.substr(start, end - start));
        break;
      }
      fields.push_back(text.substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
    pos = end + 1;
  }
  return rows;
}

}  // namespace brpqkd
