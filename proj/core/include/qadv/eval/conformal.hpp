#pragma once

#include <vector>

#include "qadv/types.hpp"

namespace qadv::eval {

inline const std::vector<double> kDefaultConformalLevels = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
inline constexpr Index kMinCalibration = 10;

struct IntervalSet {
  double level = 0.0;
  Vector lower;
  Vector upper;
};

struct ConformalReport {
  std::vector<double> levels;
  /// Infinite when ceil((n_cal+1) * level) exceeds n_cal.
  std::vector<double> half_widths;
  std::vector<double> coverage;
  /// Per-instance bounds at 0.9 and 0.95 (levels absent from `levels` are skipped).
  std::vector<IntervalSet> intervals;
};

/// Split-conformal half-width: the ceil((n+1) * level)-th smallest absolute residual.
double conformal_half_width(std::vector<double> abs_residuals, double level);

/// Throws TooFewCalibration below kMinCalibration residuals.
ConformalReport conformal(const Vector& cal_residuals, const std::vector<double>& levels, const Vector& y_test,
                          const Vector& yhat_test);

}  // namespace qadv::eval
