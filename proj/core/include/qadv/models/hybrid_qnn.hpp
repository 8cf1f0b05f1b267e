#pragma once

#include <vector>

#include "qadv/nn/mlp.hpp"
#include "qadv/qsim/circuit.hpp"

namespace qadv::models {

/// Architecture of the hybrid network: dense trunk emitting 2n rotation
/// angles, an n-qubit angle-encoding circuit read out through the Pauli-Z
/// average, and a sigmoid.
struct QnnConfig {
  Index input_dim = 8;
  std::vector<Index> hidden = {256, 128, 64, 32};
  int n_qubits = 4;
  qsim::Entangler entangler = qsim::Entangler::none;
  nn::InitScheme init = nn::InitScheme::fan_in_uniform;
  double dropout = 0.25;
  /// Multiplier applied to the trunk outputs before they become angles.
  double angle_scale = 1.0;
  /// false replaces the circuit with sigmoid(mean of the trunk outputs).
  bool quantum = true;
  /// false feeds the input features straight in as angles (no trunk).
  bool classical_trunk = true;

  void validate() const;
};

/// Trunk layout: ReLU on every layer, dropout after the second and the last.
nn::MlpSpec qnn_trunk_spec(const QnnConfig& cfg);

struct HybridQnn {
  QnnConfig config;
  nn::Mlp trunk;  // empty when config.classical_trunk is false
  qsim::CircuitSpec circuit;

  static HybridQnn create(const QnnConfig& cfg, Rng& rng);
  [[nodiscard]] Index parameter_count() const noexcept;
};

struct QnnTrace {
  nn::ForwardTrace trunk;
  Matrix angles;  // B x 2n, after angle_scale
  Vector q;       // circuit expectation (or classical surrogate)
  Vector yhat;
};

struct QnnForward {
  Vector yhat;
  QnnTrace trace;
};

struct QnnGradients {
  nn::MlpGradients trunk;
  Matrix input;
};

QnnForward qnn_forward(const HybridQnn& model, const Matrix& x, nn::Mode mode, Rng* rng = nullptr);
/// Eval-mode prediction without a trace.
Vector qnn_predict(const HybridQnn& model, const Matrix& x);
/// Chain rule through sigmoid, the parameter-shift circuit gradient and
/// the trunk.
QnnGradients qnn_backward(const HybridQnn& model, const QnnTrace& trace, const Vector& d_yhat);

}  // namespace qadv::models
