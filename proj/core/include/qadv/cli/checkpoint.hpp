#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qadv/cli/run_config.hpp"
#include "qadv/data/pca.hpp"
#include "qadv/data/preprocess.hpp"
#include "qadv/train/bundle.hpp"

namespace qadv::cli {

inline constexpr const char* kCheckpointVersion = "1.0";
inline constexpr int kCheckpointMajor = 1;

/// Trained models plus everything needed to map raw inputs into model space.
struct Checkpoint {
  RunConfig config;
  train::ModelBundle models;
  data::MinMaxScaler scaler;
  double target_raw_min = 0.0;
  double target_raw_max = 1.0;
  std::optional<data::PcaBasis> pca;
  std::vector<std::string> feature_names;
};

Json checkpoint_to_json(const Checkpoint& ckpt);
/// Throws VersionMismatch on a different major format version and Io on a
/// malformed document.
Checkpoint checkpoint_from_json(const Json& doc);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Serialized form of a dense stack: spec fields plus base64 parameters.
Json mlp_to_json(const nn::Mlp& mlp);
nn::Mlp mlp_from_json(const Json& doc);

}  // namespace qadv::cli
