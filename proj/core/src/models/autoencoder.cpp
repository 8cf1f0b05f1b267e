#include "qadv/models/autoencoder.hpp"

#include "qadv/error.hpp"

namespace qadv::models {

void QaeConfig::validate() const {
  if (input_dim < 1) raise(Errc::Config, "autoencoder input width must be positive");
  if (n_qubits < 1 || n_qubits > qsim::kMaxQubits) raise(Errc::Config, "autoencoder qubit count out of range");
}

nn::MlpSpec qae_encoder_spec(const QaeConfig& cfg) {
  nn::MlpSpec spec;
  spec.layer_dims.push_back(cfg.input_dim);
  for (const auto h : cfg.encoder_hidden) spec.layer_dims.push_back(h);
  spec.layer_dims.push_back(2 * static_cast<Index>(cfg.n_qubits));
  spec.activations.assign(spec.layer_dims.size() - 1, nn::Activation::relu);
  return spec;
}

nn::MlpSpec qae_decoder_spec(const QaeConfig& cfg) {
  nn::MlpSpec spec;
  spec.layer_dims.push_back(cfg.n_qubits);
  for (const auto h : cfg.decoder_hidden) spec.layer_dims.push_back(h);
  spec.layer_dims.push_back(cfg.input_dim);
  spec.activations.assign(spec.layer_dims.size() - 2, nn::Activation::relu);
  spec.activations.push_back(nn::Activation::sigmoid);
  return spec;
}

QuantumAutoencoder QuantumAutoencoder::create(const QaeConfig& cfg, Rng& rng) {
  cfg.validate();
  QuantumAutoencoder ae;
  ae.config = cfg;
  ae.encoder = nn::Mlp::init(qae_encoder_spec(cfg), rng, cfg.init);
  ae.bottleneck = {cfg.n_qubits, cfg.entangler};
  ae.decoder = nn::Mlp::init(qae_decoder_spec(cfg), rng, cfg.init);
  return ae;
}

QaeForward qae_forward(const QuantumAutoencoder& ae, const Matrix& x, nn::Mode mode, Rng* rng) {
  if (x.cols() != ae.config.input_dim)
    raise(Errc::DimensionMismatch, "autoencoder expects " + std::to_string(ae.config.input_dim) + " input columns");
  QaeForward out;
  auto enc = ae.encoder.forward(x, mode, rng);
  out.trace.encoder = std::move(enc.trace);
  out.trace.angles = enc.output * ae.config.angle_scale;
  out.trace.bottleneck = qsim::quantum_forward_batch(ae.bottleneck, out.trace.angles).per_qubit;
  auto dec = ae.decoder.forward(out.trace.bottleneck, mode, rng);
  out.trace.decoder = std::move(dec.trace);
  out.reconstruction = std::move(dec.output);
  out.bottleneck = out.trace.bottleneck;
  return out;
}

QaeGradients qae_backward(const QuantumAutoencoder& ae, const QaeTrace& trace, const Matrix& d_reconstruction) {
  QaeGradients g;
  g.decoder = ae.decoder.backward(trace.decoder, d_reconstruction);
  const Matrix& d_code = g.decoder.input;
  const Index batch = trace.angles.rows();
  Matrix d_angles(batch, trace.angles.cols());
  std::vector<double> row(static_cast<std::size_t>(trace.angles.cols()));
  for (Index b = 0; b < batch; ++b) {
    for (Index k = 0; k < trace.angles.cols(); ++k) row[static_cast<std::size_t>(k)] = trace.angles(b, k);
    const Matrix jac = qsim::param_shift_jacobian(ae.bottleneck, row);  // n x 2n
    d_angles.row(b) = d_code.row(b) * jac;
  }
  g.encoder = ae.encoder.backward(trace.encoder, d_angles * ae.config.angle_scale);
  g.input = g.encoder.input;
  return g;
}

Vector qae_instance_error(const QuantumAutoencoder& ae, const Matrix& x) {
  const Matrix angles = ae.encoder.predict(x) * ae.config.angle_scale;
  const Matrix code = qsim::quantum_forward_batch(ae.bottleneck, angles).per_qubit;
  const Matrix recon = ae.decoder.predict(code);
  return (recon - x).array().square().rowwise().mean();
}

namespace {

Matrix codes_with_intercept(const QuantumAutoencoder& ae, const Matrix& x) {
  const Matrix angles = ae.encoder.predict(x) * ae.config.angle_scale;
  const Matrix code = qsim::quantum_forward_batch(ae.bottleneck, angles).per_qubit;
  Matrix design(code.rows(), code.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(code.cols()) = code;
  return design;
}

}  // namespace

void fit_readout(QuantumAutoencoder& ae, const Matrix& x, const Vector& y, double ridge) {
  if (x.rows() != y.size()) raise(Errc::ShapeMismatch, "readout rows differ from targets");
  if (x.rows() < 1) raise(Errc::EmptyTraining, "readout needs training rows");
  const Matrix design = codes_with_intercept(ae, x);
  Matrix gram = design.transpose() * design;
  gram.diagonal().tail(gram.rows() - 1).array() += ridge * static_cast<double>(x.rows());
  ae.readout = gram.ldlt().solve(design.transpose() * y);
  if (!ae.readout.allFinite()) raise(Errc::SingularFit, "readout normal equations are singular");
}

Vector qae_predict(const QuantumAutoencoder& ae, const Matrix& x) {
  if (ae.readout.size() != ae.config.n_qubits + 1) raise(Errc::InvalidArgument, "autoencoder readout is not fitted");
  return (codes_with_intercept(ae, x) * ae.readout).cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace qadv::models
