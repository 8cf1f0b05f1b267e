#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qadv/data/preprocess.hpp"
#include "qadv/train/config.hpp"

namespace qadv::cli {

using Json = nlohmann::ordered_json;

struct DataOptions {
  /// Catalog CSV; empty means the synthetic generator.
  std::string path;
  Index synthetic_rows = 2000;
  double synthetic_noise = 0.05;
  data::PreprocessConfig preprocess;
  /// 0 keeps all features; k > 0 projects onto the top-k principal axes
  /// fitted on the training rows.
  Index pca_components = 0;
  double test_fraction = 0.2;
  /// Share of all rows held out for conformal calibration.
  double validation_fraction = 0.1;
  int stratify_bins = 3;

  [[nodiscard]] bool synthetic() const noexcept { return path.empty(); }
};

struct EvalOptions {
  int calibration_bins = 10;
  double noise_magnitude = 0.1;
  int importance_repeats = 10;
  std::vector<double> conformal_levels = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  int cv_folds = 3;
  Index latency_batch = 256;
  int latency_runs = 50;
};

/// Everything one command needs, with defaults for every field.
struct RunConfig {
  train::ModelKind model = train::ModelKind::vanilla;
  std::uint64_t seed = 0;
  DataOptions data;
  train::TrainConfig train;
  EvalOptions eval;

  void validate() const;
};

/// Overlays the keys present in `doc` onto `cfg`. Unknown keys and wrongly
/// typed values raise Errc::Config naming the offending path.
void merge_config(RunConfig& cfg, const Json& doc);
RunConfig load_config(const std::filesystem::path& path);
Json to_json(const RunConfig& cfg);

/// FNV-1a 64-bit hash of the compact JSON form, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Value of QADV_SEED if set; malformed values raise Errc::Config.
std::optional<std::uint64_t> seed_from_env();

}  // namespace qadv::cli
