#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qadv::train {

/// Epoch-mean losses.
struct EpochRecord {
  int epoch = 0;
  double loss_m1 = 0.0;
  double loss_m1_mse = 0.0;
  double loss_m2 = 0.0;
  std::optional<double> loss_g;
  std::optional<double> loss_d;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  /// Separate GAN pre-training stage (Q-GAN-1 only).
  std::vector<EpochRecord> gan_pretrain;
  std::vector<std::string> warnings;
  std::uint64_t circuit_evaluations = 0;
};

/// CSV with header `stage,epoch,loss_m1,loss_m1_mse,loss_m2,loss_g,loss_d`.
void write_history_csv(std::ostream& out, const TrainHistory& history);

}  // namespace qadv::train
