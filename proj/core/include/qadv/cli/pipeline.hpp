#pragma once

#include <optional>

#include "qadv/cli/run_config.hpp"
#include "qadv/data/frame.hpp"
#include "qadv/data/pca.hpp"
#include "qadv/data/preprocess.hpp"
#include "qadv/data/split.hpp"

namespace qadv::cli {

/// Model-space data for one run: load or synthesize, preprocess, split and
/// optionally project. Fully determined by the config and its seed.
struct PreparedData {
  data::Dataset all;
  data::MinMaxScaler scaler;
  std::optional<data::PreprocessReport> preprocess;
  std::optional<data::PcaBasis> pca;
  data::SplitIndices split;
  data::Dataset train;
  data::Dataset test;
  data::Dataset validation;

  /// Range of the scaled target over all rows, the custom-accuracy denominator.
  [[nodiscard]] double target_range() const;
};

PreparedData prepare_data(const RunConfig& cfg);

/// Training config with the run seed filled in.
train::TrainConfig effective_train_config(const RunConfig& cfg);

}  // namespace qadv::cli
