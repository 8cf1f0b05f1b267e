#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qadv::data {

enum class Morph { E, S };

inline constexpr std::array<std::string_view, 11> kCanonicalColumns = {
    "id", "morph", "logsigmae", "logM12", "logRe", "logAge", "ZH", "logML", "DlogAge", "DZH", "DlogML"};

/// The eight numeric predictors, in model-input order.
inline constexpr std::array<std::string_view, 8> kFeatureColumns = {
    "logM12", "logRe", "logAge", "ZH", "logML", "DlogAge", "DZH", "DlogML"};

inline constexpr std::string_view kTargetColumn = "logsigmae";

/// One catalog record. Numeric cells that failed to parse are std::nullopt.
struct CatalogRow {
  std::string id;
  Morph morph = Morph::E;
  std::optional<double> logsigmae;
  std::array<std::optional<double>, 8> features{};
};

struct RawCatalog {
  std::vector<CatalogRow> rows;

  [[nodiscard]] std::size_t size() const noexcept { return rows.size(); }
  [[nodiscard]] bool empty() const noexcept { return rows.empty(); }
};

/// Parses a comma-separated catalog with a header naming the 11 canonical
/// columns in any order. Throws MissingColumn, MalformedRow or EmptyFile.
RawCatalog parse_catalog(std::istream& in);
RawCatalog load_catalog(const std::filesystem::path& path);

}  // namespace qadv::data
