#include "qadv/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qadv/error.hpp"

namespace qadv::eval {

double range_accuracy(double error, double y_range) noexcept {
  return std::max(0.0, (1.0 - error / y_range) * 100.0);
}

RegressionMetrics regression_metrics(const Vector& y, const Vector& yhat, double y_range) {
  if (y.size() != yhat.size()) raise(Errc::ShapeMismatch, "targets and predictions differ in length");
  if (y.size() < 2) raise(Errc::TooFewSamples, "regression metrics need at least 2 pairs");
  if (!(y_range > 0.0)) raise(Errc::InvalidArgument, "y_range must be positive");
  const double n = static_cast<double>(y.size());
  const Vector err = yhat - y;
  const double ss_res = err.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).square().sum();
  if (ss_tot == 0.0) raise(Errc::ZeroVariance, "target is constant, R2 undefined");
  RegressionMetrics m;
  m.mse = ss_res / n;
  m.rmse = std::sqrt(m.mse);
  m.mae = err.cwiseAbs().sum() / n;
  m.r2 = 1.0 - ss_res / ss_tot;
  m.pct_rmse = range_accuracy(m.rmse, y_range);
  m.pct_mse = range_accuracy(m.mse, y_range);
  m.pct_mae = range_accuracy(m.mae, y_range);
  return m;
}

}  // namespace qadv::eval
