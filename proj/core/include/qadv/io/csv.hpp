#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qadv/types.hpp"

namespace qadv::io {

/// Minimal CSV table: a header plus pre-formatted cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

std::string to_csv(const CsvTable& table);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Writes a matrix with the given column names.
CsvTable matrix_table(const Matrix& m, const std::vector<std::string>& names);

}  // namespace qadv::io
