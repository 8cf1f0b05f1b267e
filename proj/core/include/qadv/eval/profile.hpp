#pragma once

#include <cstdint>
#include <vector>

#include "qadv/data/frame.hpp"
#include "qadv/eval/metrics.hpp"
#include "qadv/train/config.hpp"

namespace qadv::eval {

struct ProfileEntry {
  int n_qubits = 0;
  RegressionMetrics metrics;
  double latency_ms_mean = 0.0;
  double latency_ms_std = 0.0;
  Index parameter_count = 0;
  std::uint64_t circuit_evaluations = 0;
};

struct ProfileOptions {
  int n_min = 1;
  int n_max = 4;
  Index latency_batch = 256;
  int latency_runs = 50;
};

/// Retrains `kind` once per qubit count and times eval-mode prediction on a
/// fixed batch (first test rows, cycled to fill the batch). One warm-up run
/// is discarded.
std::vector<ProfileEntry> profile_qubits(train::ModelKind kind, const data::Dataset& train_set,
                                         const data::Dataset& test_set, const train::TrainConfig& cfg,
                                         const ProfileOptions& options = {});

}  // namespace qadv::eval
