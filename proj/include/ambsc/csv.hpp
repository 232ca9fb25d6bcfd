#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ambsc {

/// A numeric table with named columns; every row has columns.size() cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws std::out_of_range
  double at(std::size_t row, const std::string& name) const;
};

struct CsvMeta {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
};

/// 12 significant digits, "%g" style, with a "." decimal point whatever the
/// global locale.
std::string format_number(double value);

/// One '#' provenance line, one header line, then one line per row.
void write_csv(std::ostream& out, const Table& table, const CsvMeta& meta);

/// Parses what write_csv produced. Lines starting with '#' are skipped.
Table read_csv(std::istream& in);

}  // namespace ambsc
