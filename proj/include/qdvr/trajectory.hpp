#pragma once

#include <string>
#include <vector>

namespace qdvr {

// Plain numeric CSV with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

void write_csv(const std::string& path, const Table& table);
Table read_csv(const std::string& path);

}  // namespace qdvr
