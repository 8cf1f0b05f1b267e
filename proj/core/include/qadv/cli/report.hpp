#pragma once

#include <filesystem>
#include <string>

#include "qadv/cli/run_config.hpp"
#include "qadv/eval/metrics.hpp"

namespace qadv::cli {

inline constexpr const char* kReportVersion = "1.0";

/// Finite values as numbers; NaN and infinities as the strings "nan",
/// "inf" and "-inf" so the document stays valid JSON.
Json number(double value);

/// Document skeleton: format_version, command, run metadata, config.
Json report_header(const std::string& command, const RunConfig& cfg);

/// ISO-8601 UTC time; SOURCE_DATE_EPOCH overrides the clock when set.
std::string timestamp_now();

Json metrics_json(const eval::RegressionMetrics& m);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& doc);

}  // namespace qadv::cli
