#pragma once

#include <vector>

#include "qadv/types.hpp"

namespace qadv::eval {

struct ReliabilityBin {
  double lower = 0.0;
  double upper = 0.0;
  double center = 0.0;
  double mean_predicted = 0.0;
  double mean_observed = 0.0;
  double mass = 0.0;
  Index count = 0;
};

struct CalibrationReport {
  /// Non-empty equal-width bins on [0,1].
  std::vector<ReliabilityBin> bins;
  double ece = 0.0;
  double ace = 0.0;
  double brier = 0.0;
  /// Every prediction identical; ECE then equals |mean(yhat) - mean(y)|.
  bool degenerate = false;
};

/// ECE on equal-width bins of yhat, ACE on equal-mass bins, Brier = MSE.
CalibrationReport calibration(const Vector& y, const Vector& yhat, int n_bins = 10);

}  // namespace qadv::eval
