#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qadv/types.hpp"

namespace qadv::xai {

/// Batch model interface: each row of the argument is one input, the result
/// holds one prediction per row.
using PredictFn = std::function<Vector(const Matrix&)>;

inline constexpr double kStdFloor = 1e-6;

struct ExplainerConfig {
  Index n_samples = 500;
  std::optional<double> kernel_width;  // default 0.75 * sqrt(d)
  double ridge = 1e-6;
};

/// Training-set statistics that set the perturbation scale of local
/// surrogate fits. Immutable once fitted.
struct Explainer {
  Vector feature_means;
  Vector feature_stds;
  Index n_samples = 500;
  double kernel_width = 0.0;
  double ridge = 1e-6;

  [[nodiscard]] Index dims() const noexcept { return feature_means.size(); }
};

/// Coefficients of a proximity-weighted linear fit around one instance.
struct Explanation {
  Vector weights;
  double intercept = 0.0;
  double local_r2 = 0.0;
};

Explainer fit_explainer(const Matrix& x_train, const ExplainerConfig& cfg = {});

/// Samples z_0 = x and z_i = x + std * N(0, I), weights each sample with
/// exp(-||(z - x)/std||^2 / width^2) and fits a weighted ridge regression of
/// predict(z) on z.
Explanation explain(const Explainer& explainer, const PredictFn& predict, const VectorRef& x, std::uint64_t seed);

/// Row i is explained with seed `seed + i`.
std::vector<Explanation> explain_batch(const Explainer& explainer, const PredictFn& predict, const Matrix& x,
                                       std::uint64_t seed);
/// Row i is explained with seeds[i].
std::vector<Explanation> explain_batch(const Explainer& explainer, const PredictFn& predict, const Matrix& x,
                                       std::span<const std::uint64_t> seeds);

/// Stacks explanation weights into a B x d matrix.
Matrix weight_matrix(const std::vector<Explanation>& explanations);

}  // namespace qadv::xai
