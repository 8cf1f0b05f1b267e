#pragma once

#include <cstdint>
#include <vector>

#include "qadv/eval/distribution.hpp"
#include "qadv/eval/metrics.hpp"
#include "qadv/eval/noise.hpp"
#include "qadv/xai/explainer.hpp"

namespace qadv::eval {

struct RobustnessEntry {
  NoiseKind kind = NoiseKind::gaussian;
  Index rows = 0;
  RegressionMetrics metrics;
  DistributionalMetrics distribution;
};

/// Re-evaluates a trained model on each perturbed copy of the test set.
/// Cluster labels are the 3-class quantile bins of the perturbed targets.
std::vector<RobustnessEntry> robustness_suite(const xai::PredictFn& predict, const Matrix& x_test,
                                              const Vector& y_test, double magnitude, std::uint64_t seed,
                                              double y_range);

}  // namespace qadv::eval
