#include "qadv/nn/adam.hpp"

#include <cmath>

#include "qadv/error.hpp"

namespace qadv::nn {

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size() || params.size() != state.m.size())
    raise(Errc::ShapeMismatch, "adam_step: parameter, gradient and moment sizes differ");
  const auto& c = state.cfg;
  ++state.t;
  const double bias1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.t));
  const double bias2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grads[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
  }
}

AdamState make_adam(const Mlp& mlp, AdamConfig cfg) {
  return AdamState(cfg, static_cast<std::size_t>(mlp.parameter_count()));
}

void adam_step(AdamState& state, Mlp& mlp, const MlpGradients& grads) {
  auto params = mlp.parameters();
  const auto flat = grads.flatten();
  adam_step(state, params, flat);
  mlp.set_parameters(params);
}

}  // namespace qadv::nn
