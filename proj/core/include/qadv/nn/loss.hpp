#pragma once

#include "qadv/types.hpp"

namespace qadv::nn {

struct LossResult {
  double value = 0.0;
  Matrix grad;  // same shape as the prediction
};

/// Mean of squared differences over every entry; grad = 2(pred - target)/N.
LossResult mse_loss(const MatrixRef& pred, const MatrixRef& target);

inline constexpr double kBceClamp = 1e-7;

/// Binary cross-entropy with predictions clamped to [eps, 1 - eps]. The
/// gradient is zero where the clamp is active.
LossResult bce_loss(const MatrixRef& pred, const MatrixRef& labels, double eps = kBceClamp);

}  // namespace qadv::nn
