#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qadv/nn/mlp.hpp"

namespace qadv::nn {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig cfg;
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;

  AdamState() = default;
  AdamState(AdamConfig config, std::size_t parameter_count)
      : cfg(config), m(parameter_count, 0.0), v(parameter_count, 0.0) {}
};

/// Bias-corrected Adam update of `params` in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

AdamState make_adam(const Mlp& mlp, AdamConfig cfg);
void adam_step(AdamState& state, Mlp& mlp, const MlpGradients& grads);

}  // namespace qadv::nn
