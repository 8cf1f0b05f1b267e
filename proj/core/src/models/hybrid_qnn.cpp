#include "qadv/models/hybrid_qnn.hpp"

#include <cmath>
#include <vector>

#include "qadv/error.hpp"

namespace qadv::models {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Matrix angles_for(const HybridQnn& model, const Matrix& trunk_output) {
  return trunk_output * model.config.angle_scale;
}

}  // namespace

void QnnConfig::validate() const {
  if (input_dim < 1) raise(Errc::Config, "QNN input width must be positive");
  if (n_qubits < 1 || n_qubits > qsim::kMaxQubits) raise(Errc::Config, "QNN qubit count out of range");
  if (dropout < 0.0 || dropout >= 1.0) raise(Errc::Config, "dropout must lie in [0,1)");
  if (!classical_trunk && input_dim != 2 * n_qubits)
    raise(Errc::Config, "without a classical trunk the input width must equal 2 * n_qubits");
}

nn::MlpSpec qnn_trunk_spec(const QnnConfig& cfg) {
  nn::MlpSpec spec;
  spec.layer_dims.push_back(cfg.input_dim);
  for (const auto h : cfg.hidden) spec.layer_dims.push_back(h);
  spec.layer_dims.push_back(2 * static_cast<Index>(cfg.n_qubits));
  spec.activations.assign(spec.layer_dims.size() - 1, nn::Activation::relu);
  const std::size_t last = spec.activations.size() - 1;
  if (last >= 1) spec.dropout_after.push_back(1);
  if (last != 1) spec.dropout_after.push_back(last);
  spec.dropout_rate = cfg.dropout;
  return spec;
}

HybridQnn HybridQnn::create(const QnnConfig& cfg, Rng& rng) {
  cfg.validate();
  HybridQnn model;
  model.config = cfg;
  model.circuit = {cfg.n_qubits, cfg.entangler};
  if (cfg.classical_trunk) model.trunk = nn::Mlp::init(qnn_trunk_spec(cfg), rng, cfg.init);
  return model;
}

Index HybridQnn::parameter_count() const noexcept {
  return config.classical_trunk ? trunk.parameter_count() : 0;
}

QnnForward qnn_forward(const HybridQnn& model, const Matrix& x, nn::Mode mode, Rng* rng) {
  if (x.cols() != model.config.input_dim)
    raise(Errc::DimensionMismatch, "QNN expects " + std::to_string(model.config.input_dim) + " input columns");
  QnnForward out;
  if (model.config.classical_trunk) {
    auto trunk = model.trunk.forward(x, mode, rng);
    out.trace.trunk = std::move(trunk.trace);
    out.trace.angles = angles_for(model, trunk.output);
  } else {
    out.trace.angles = angles_for(model, x);
  }
  if (model.config.quantum) {
    out.trace.q = qsim::quantum_forward_batch(model.circuit, out.trace.angles).h;
  } else {
    out.trace.q = out.trace.angles.rowwise().mean();
  }
  out.trace.yhat = out.trace.q.unaryExpr([](double q) { return sigmoid(q); });
  out.yhat = out.trace.yhat;
  return out;
}

Vector qnn_predict(const HybridQnn& model, const Matrix& x) {
  if (x.cols() != model.config.input_dim)
    raise(Errc::DimensionMismatch, "QNN expects " + std::to_string(model.config.input_dim) + " input columns");
  const Matrix angles = angles_for(model, model.config.classical_trunk ? model.trunk.predict(x) : x);
  const Vector q = model.config.quantum ? Vector(qsim::quantum_forward_batch(model.circuit, angles).h)
                                        : Vector(angles.rowwise().mean());
  return q.unaryExpr([](double v) { return sigmoid(v); });
}

QnnGradients qnn_backward(const HybridQnn& model, const QnnTrace& trace, const Vector& d_yhat) {
  const Index batch = trace.yhat.size();
  if (d_yhat.size() != batch || trace.angles.rows() != batch)
    raise(Errc::TraceMismatch, "upstream gradient length differs from traced batch");
  if (trace.angles.cols() != model.circuit.parameter_count()) raise(Errc::TraceMismatch, "trace angle width differs");

  const Vector d_q = d_yhat.cwiseProduct(trace.yhat.cwiseProduct((1.0 - trace.yhat.array()).matrix()));
  Matrix d_angles(batch, trace.angles.cols());
  if (model.config.quantum) {
    std::vector<double> row(static_cast<std::size_t>(trace.angles.cols()));
    for (Index b = 0; b < batch; ++b) {
      if (d_q(b) == 0.0) {
        d_angles.row(b).setZero();
        continue;
      }
      for (Index k = 0; k < trace.angles.cols(); ++k) row[static_cast<std::size_t>(k)] = trace.angles(b, k);
      d_angles.row(b) = d_q(b) * qsim::param_shift_grad(model.circuit, row).transpose();
    }
  } else {
    d_angles = d_q.replicate(1, trace.angles.cols()) / static_cast<double>(trace.angles.cols());
  }
  const Matrix d_trunk_out = d_angles * model.config.angle_scale;

  QnnGradients grads;
  if (model.config.classical_trunk) {
    grads.trunk = model.trunk.backward(trace.trunk, d_trunk_out);
    grads.input = grads.trunk.input;
  } else {
    grads.input = d_trunk_out;
  }
  return grads;
}

}  // namespace qadv::models
