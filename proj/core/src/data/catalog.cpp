#include "qadv/data/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "qadv/error.hpp"

namespace qadv::data {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_real(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

RawCatalog parse_catalog(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) raise(Errc::EmptyFile, "catalog has no header row");

  const auto header = split_fields(line);
  std::array<std::size_t, kCanonicalColumns.size()> position{};
  for (std::size_t c = 0; c < kCanonicalColumns.size(); ++c) {
    const auto it = std::find(header.begin(), header.end(), kCanonicalColumns[c]);
    if (it == header.end()) raise(Errc::MissingColumn, std::string(kCanonicalColumns[c]));
    position[c] = static_cast<std::size_t>(it - header.begin());
  }

  RawCatalog catalog;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      raise(Errc::MalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    CatalogRow row;
    row.id = std::string(fields[position[0]]);
    const auto morph = fields[position[1]];
    if (morph == "E") {
      row.morph = Morph::E;
    } else if (morph == "S") {
      row.morph = Morph::S;
    } else {
      raise(Errc::MalformedRow, "line " + std::to_string(line_no) + ": morph must be E or S");
    }
    row.logsigmae = parse_real(fields[position[2]]);
    for (std::size_t f = 0; f < kFeatureColumns.size(); ++f) row.features[f] = parse_real(fields[position[3 + f]]);
    catalog.rows.push_back(std::move(row));
  }
  return catalog;
}

RawCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::Io, "cannot open " + path.string());
  return parse_catalog(in);
}

}  // namespace qadv::data
