#include "ambsc/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ambsc {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column named '" + name + "'");
}

double Table::at(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  if (res.ec != std::errc{}) throw std::runtime_error("format_number failed");
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& table, const CsvMeta& meta) {
  out << "# ambsc " << AMBSC_VERSION << " command=" << meta.command
      << " config=" << meta.config_hash << " seed=" << meta.seed << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("write_csv: row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

namespace {

double parse_cell(const std::string& cell) {
  if (cell == "nan") return std::nan("");
  if (cell == "inf") return INFINITY;
  if (cell == "-inf") return -INFINITY;
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw std::runtime_error("read_csv: bad number '" + cell + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      t.columns = split(line);
      have_header = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) throw std::runtime_error("read_csv: ragged row");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace ambsc
