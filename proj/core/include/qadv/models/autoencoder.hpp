#pragma once

#include <vector>

#include "qadv/nn/mlp.hpp"
#include "qadv/qsim/circuit.hpp"

namespace qadv::models {

struct QaeConfig {
  Index input_dim = 8;
  std::vector<Index> encoder_hidden = {32, 16};
  std::vector<Index> decoder_hidden = {16, 32};
  int n_qubits = 4;
  qsim::Entangler entangler = qsim::Entangler::none;
  nn::InitScheme init = nn::InitScheme::fan_in_uniform;
  double angle_scale = 1.0;

  void validate() const;
};

/// Encoder -> 2n angles -> per-qubit <Z_j> bottleneck -> decoder. The
/// optional `readout` maps the bottleneck to the regression target
/// (intercept first) so the self-supervised model can be scored.
struct QuantumAutoencoder {
  QaeConfig config;
  nn::Mlp encoder;
  qsim::CircuitSpec bottleneck;
  nn::Mlp decoder;
  Vector readout;

  static QuantumAutoencoder create(const QaeConfig& cfg, Rng& rng);
  [[nodiscard]] Index parameter_count() const noexcept { return encoder.parameter_count() + decoder.parameter_count(); }
};

nn::MlpSpec qae_encoder_spec(const QaeConfig& cfg);
nn::MlpSpec qae_decoder_spec(const QaeConfig& cfg);

struct QaeTrace {
  nn::ForwardTrace encoder;
  Matrix angles;
  Matrix bottleneck;
  nn::ForwardTrace decoder;
};

struct QaeForward {
  Matrix reconstruction;  // B x d
  Matrix bottleneck;      // B x n
  QaeTrace trace;
};

struct QaeGradients {
  nn::MlpGradients encoder;
  nn::MlpGradients decoder;
  Matrix input;
};

QaeForward qae_forward(const QuantumAutoencoder& ae, const Matrix& x, nn::Mode mode, Rng* rng = nullptr);
QaeGradients qae_backward(const QuantumAutoencoder& ae, const QaeTrace& trace, const Matrix& d_reconstruction);

/// Mean squared reconstruction error per row (eval mode).
Vector qae_instance_error(const QuantumAutoencoder& ae, const Matrix& x);

/// Least-squares fit of `readout` from the bottleneck codes of `x` to `y`.
void fit_readout(QuantumAutoencoder& ae, const Matrix& x, const Vector& y, double ridge = 1e-8);
/// Readout prediction clipped to [0,1]; requires a fitted readout.
Vector qae_predict(const QuantumAutoencoder& ae, const Matrix& x);

}  // namespace qadv::models
