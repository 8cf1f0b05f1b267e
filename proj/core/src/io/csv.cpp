#include "qadv/io/csv.hpp"

#include <fstream>

#include "qadv/error.hpp"
#include "qadv/io/format.hpp"

namespace qadv::io {

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size()) raise(Errc::ShapeMismatch, "CSV row width differs from header");
  rows.push_back(std::move(cells));
}

namespace {

void append_cell(std::string& out, const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) {
    out += cell;
    return;
  }
  out += '"';
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    append_cell(out, cells[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_line(out, table.header);
  for (const auto& r : table.rows) append_line(out, r);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(Errc::Io, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) raise(Errc::Io, "write failed for " + path.string());
}

CsvTable matrix_table(const Matrix& m, const std::vector<std::string>& names) {
  if (static_cast<Index>(names.size()) != m.cols()) raise(Errc::ShapeMismatch, "column names do not match matrix");
  CsvTable t{names, {}};
  for (Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(names.size());
    for (Index j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qadv::io
