#include "qadv/nn/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "qadv/error.hpp"

namespace qadv::nn {

bool MlpSpec::has_dropout_after(std::size_t layer) const {
  return std::find(dropout_after.begin(), dropout_after.end(), layer) != dropout_after.end();
}

void MlpSpec::validate() const {
  if (activations.empty()) raise(Errc::InvalidArgument, "MLP needs at least one layer");
  if (layer_dims.size() != activations.size() + 1)
    raise(Errc::InvalidArgument, "layer_dims must have one more entry than activations");
  for (const auto d : layer_dims)
    if (d < 1) raise(Errc::InvalidArgument, "layer widths must be positive");
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) raise(Errc::InvalidArgument, "dropout rate must be in [0,1)");
  for (const auto l : dropout_after)
    if (l >= activations.size()) raise(Errc::InvalidArgument, "dropout index past the last layer");
}

double apply_activation(Activation act, double z) noexcept {
  switch (act) {
    case Activation::relu: return z > 0.0 ? z : 0.0;
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::identity: return z;
  }
  return z;
}

namespace {

void activate_inplace(Activation act, Matrix& m) {
  switch (act) {
    case Activation::relu: m = m.cwiseMax(0.0); break;
    case Activation::sigmoid: m = (1.0 + (-m.array()).exp()).inverse().matrix(); break;
    case Activation::identity: break;
  }
}

// d act / d pre, expressed through pre- or post-activation values.
Matrix activation_derivative(Activation act, const Matrix& pre, const Matrix& post) {
  switch (act) {
    case Activation::relu: return (pre.array() > 0.0).cast<double>().matrix();
    case Activation::sigmoid: return (post.array() * (1.0 - post.array())).matrix();
    case Activation::identity: return Matrix::Ones(pre.rows(), pre.cols());
  }
  return Matrix::Ones(pre.rows(), pre.cols());
}

}  // namespace

Mlp::Mlp(MlpSpec spec, std::vector<DenseLayer> layers) : spec_(std::move(spec)), layers_(std::move(layers)) {
  spec_.validate();
  if (layers_.size() != spec_.layers()) raise(Errc::InvalidArgument, "layer count differs from spec");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto in = spec_.layer_dims[l];
    const auto out = spec_.layer_dims[l + 1];
    if (layers_[l].weights.rows() != out || layers_[l].weights.cols() != in || layers_[l].bias.size() != out)
      raise(Errc::DimensionMismatch, "layer " + std::to_string(l) + " shape differs from spec");
  }
}

const char* to_string(InitScheme scheme) noexcept {
  return scheme == InitScheme::glorot_uniform ? "glorot_uniform" : "fan_in_uniform";
}

InitScheme parse_init_scheme(const std::string& text) {
  if (text == "fan_in_uniform") return InitScheme::fan_in_uniform;
  if (text == "glorot_uniform") return InitScheme::glorot_uniform;
  raise(Errc::Config, "unknown init scheme '" + text + "'");
}

Mlp Mlp::init(const MlpSpec& spec, Rng& rng, InitScheme scheme) {
  spec.validate();
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l < spec.layers(); ++l) {
    const auto in = spec.layer_dims[l];
    const auto out = spec.layer_dims[l + 1];
    const bool glorot = scheme == InitScheme::glorot_uniform;
    const double limit = glorot ? std::sqrt(6.0 / static_cast<double>(in + out)) : 1.0 / std::sqrt(static_cast<double>(in));
    DenseLayer layer{Matrix(out, in), Vector::Zero(out)};
    for (Index j = 0; j < in; ++j)
      for (Index i = 0; i < out; ++i) layer.weights(i, j) = rng.uniform(-limit, limit);
    if (!glorot)
      for (Index i = 0; i < out; ++i) layer.bias(i) = rng.uniform(-limit, limit);
    layers.push_back(std::move(layer));
  }
  return Mlp(spec, std::move(layers));
}

Mlp Mlp::zeros(const MlpSpec& spec) {
  spec.validate();
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l < spec.layers(); ++l)
    layers.push_back({Matrix::Zero(spec.layer_dims[l + 1], spec.layer_dims[l]), Vector::Zero(spec.layer_dims[l + 1])});
  return Mlp(spec, std::move(layers));
}

ForwardResult Mlp::forward(const Matrix& x, Mode mode, Rng* rng) const {
  if (x.cols() != spec_.input_dim())
    raise(Errc::DimensionMismatch,
          "MLP expects " + std::to_string(spec_.input_dim()) + " input columns, got " + std::to_string(x.cols()));
  ForwardResult result;
  result.trace.mode = mode;
  result.trace.layers.reserve(layers_.size());
  Matrix current = x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    LayerTrace lt;
    lt.input = std::move(current);
    lt.pre = (lt.input * layers_[l].weights.transpose()).rowwise() + layers_[l].bias.transpose();
    lt.post = lt.pre;
    activate_inplace(spec_.activations[l], lt.post);
    current = lt.post;
    if (mode == Mode::train && spec_.has_dropout_after(l)) {
      const double p = spec_.dropout_rate;
      lt.mask = Matrix::Ones(lt.post.rows(), lt.post.cols());
      if (p > 0.0) {
        if (rng == nullptr) raise(Errc::InvalidArgument, "train-mode dropout needs a random stream");
        const double keep_scale = 1.0 / (1.0 - p);
        for (Index j = 0; j < lt.mask.cols(); ++j)
          for (Index i = 0; i < lt.mask.rows(); ++i) lt.mask(i, j) = rng->bernoulli(p) ? 0.0 : keep_scale;
        current = current.cwiseProduct(lt.mask);
      }
    }
    result.trace.layers.push_back(std::move(lt));
  }
  result.output = std::move(current);
  return result;
}

Matrix Mlp::predict(const Matrix& x) const {
  if (x.cols() != spec_.input_dim())
    raise(Errc::DimensionMismatch,
          "MLP expects " + std::to_string(spec_.input_dim()) + " input columns, got " + std::to_string(x.cols()));
  Matrix current = x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Matrix next = (current * layers_[l].weights.transpose()).rowwise() + layers_[l].bias.transpose();
    activate_inplace(spec_.activations[l], next);
    current = std::move(next);
  }
  return current;
}

MlpGradients Mlp::backward(const ForwardTrace& trace, const Matrix& d_output) const {
  if (trace.layers.size() != layers_.size()) raise(Errc::TraceMismatch, "trace layer count differs from network");
  const auto& last = trace.layers.back();
  if (d_output.rows() != last.post.rows() || d_output.cols() != last.post.cols())
    raise(Errc::TraceMismatch, "upstream gradient shape differs from traced output");

  MlpGradients grads;
  grads.layers.resize(layers_.size());
  Matrix upstream = d_output;
  for (std::size_t k = layers_.size(); k-- > 0;) {
    const auto& lt = trace.layers[k];
    if (lt.pre.cols() != layers_[k].weights.rows()) raise(Errc::TraceMismatch, "trace layer width differs");
    if (lt.mask.size() > 0) upstream = upstream.cwiseProduct(lt.mask);
    const Matrix d_pre = upstream.cwiseProduct(activation_derivative(spec_.activations[k], lt.pre, lt.post));
    grads.layers[k].weights = d_pre.transpose() * lt.input;
    grads.layers[k].bias = d_pre.colwise().sum().transpose();
    upstream = d_pre * layers_[k].weights;
  }
  grads.input = std::move(upstream);
  return grads;
}

Index Mlp::parameter_count() const noexcept {
  Index total = 0;
  for (const auto& l : layers_) total += l.parameter_count();
  return total;
}

std::vector<Index> Mlp::layer_parameter_counts() const {
  std::vector<Index> counts;
  for (const auto& l : layers_) counts.push_back(l.parameter_count());
  return counts;
}

std::vector<double> Mlp::parameters() const {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(parameter_count()));
  for (const auto& l : layers_) {
    flat.insert(flat.end(), l.weights.data(), l.weights.data() + l.weights.size());
    flat.insert(flat.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return flat;
}

void Mlp::set_parameters(std::span<const double> flat) {
  if (flat.size() != static_cast<std::size_t>(parameter_count()))
    raise(Errc::ParamCountMismatch, "flat parameter vector has the wrong length");
  std::size_t offset = 0;
  for (auto& l : layers_) {
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(offset), l.weights.size(), l.weights.data());
    offset += static_cast<std::size_t>(l.weights.size());
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(offset), l.bias.size(), l.bias.data());
    offset += static_cast<std::size_t>(l.bias.size());
  }
}

std::vector<double> MlpGradients::flatten() const {
  std::vector<double> flat;
  for (const auto& l : layers) {
    flat.insert(flat.end(), l.weights.data(), l.weights.data() + l.weights.size());
    flat.insert(flat.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return flat;
}

void MlpGradients::scale(double factor) {
  for (auto& l : layers) {
    l.weights *= factor;
    l.bias *= factor;
  }
  input *= factor;
}

void MlpGradients::add(const MlpGradients& other) {
  if (other.layers.size() != layers.size()) raise(Errc::ShapeMismatch, "gradient layer counts differ");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].weights += other.layers[l].weights;
    layers[l].bias += other.layers[l].bias;
  }
  if (input.size() == other.input.size()) input += other.input;
}

}  // namespace qadv::nn
