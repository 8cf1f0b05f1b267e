#include "qadv/cli/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "qadv/error.hpp"
#include "qadv/io/format.hpp"

namespace qadv::cli {

Json number(double value) {
  if (std::isfinite(value)) return value;
  return io::format_double(value);
}

std::string timestamp_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH"); fixed && *fixed) {
    char* end = nullptr;
    const long long v = std::strtoll(fixed, &end, 10);
    if (end && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json report_header(const std::string& command, const RunConfig& cfg) {
  return Json{{"format_version", kReportVersion},
              {"command", command},
              {"run", {{"seed", cfg.seed}, {"config_hash", config_hash(cfg)}, {"timestamp", timestamp_now()}}},
              {"config", to_json(cfg)}};
}

Json metrics_json(const eval::RegressionMetrics& m) {
  return Json{{"mse", number(m.mse)},           {"rmse", number(m.rmse)},         {"mae", number(m.mae)},
              {"r2", number(m.r2)},             {"pct_rmse", number(m.pct_rmse)}, {"pct_mse", number(m.pct_mse)},
              {"pct_mae", number(m.pct_mae)}};
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(Errc::Io, "cannot open " + path.string() + " for writing");
  f << doc.dump(2) << '\n';
  if (!f) raise(Errc::Io, "write failed for " + path.string());
}

}  // namespace qadv::cli
