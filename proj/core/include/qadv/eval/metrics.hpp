#pragma once

#include "qadv/types.hpp"

namespace qadv::eval {

struct RegressionMetrics {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
  /// (1 - error / y_range) * 100, floored at 0.
  double pct_rmse = 0.0;
  double pct_mse = 0.0;
  double pct_mae = 0.0;
};

/// Throws TooFewSamples for fewer than two pairs, InvalidArgument for a
/// non-positive range and ZeroVariance when y is constant.
RegressionMetrics regression_metrics(const Vector& y, const Vector& yhat, double y_range);

/// Custom range-relative accuracy in percent.
double range_accuracy(double error, double y_range) noexcept;

}  // namespace qadv::eval
