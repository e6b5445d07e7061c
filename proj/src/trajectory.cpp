#include "qdvr/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdvr {

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::runtime_error("no such column: " + name);
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(idx));
  return out;
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  char buf[32];
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("row width mismatch writing " + path);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  std::stringstream header(line);
  std::string cell;
  while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.columns.size())
      throw std::runtime_error("ragged csv row in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qdvr
