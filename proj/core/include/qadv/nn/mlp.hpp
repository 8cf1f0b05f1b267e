#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qadv/rng.hpp"
#include "qadv/types.hpp"

namespace qadv::nn {

enum class Activation { relu, sigmoid, identity };
enum class Mode { train, eval };

/// `fan_in_uniform` draws weights and biases from U(-1/sqrt(in), 1/sqrt(in));
/// `glorot_uniform` uses U(-sqrt(6/(in+out)), ..) with zero biases.
enum class InitScheme { fan_in_uniform, glorot_uniform };

const char* to_string(InitScheme scheme) noexcept;
InitScheme parse_init_scheme(const std::string& text);

/// Layer layout of a dense stack. `layer_dims` has one more entry than
/// `activations`; `dropout_after` holds 0-based layer indices.
struct MlpSpec {
  std::vector<Index> layer_dims;
  std::vector<Activation> activations;
  std::vector<std::size_t> dropout_after;
  double dropout_rate = 0.0;

  [[nodiscard]] std::size_t layers() const noexcept { return activations.size(); }
  [[nodiscard]] Index input_dim() const { return layer_dims.front(); }
  [[nodiscard]] Index output_dim() const { return layer_dims.back(); }
  [[nodiscard]] bool has_dropout_after(std::size_t layer) const;
  void validate() const;
};

struct DenseLayer {
  Matrix weights;  // out x in
  Vector bias;     // out

  [[nodiscard]] Index parameter_count() const noexcept { return weights.size() + bias.size(); }
};

struct LayerTrace {
  Matrix input;  // B x in
  Matrix pre;    // B x out, W x + b
  Matrix post;   // B x out, act(pre) before dropout
  Matrix mask;   // B x out, inverted-dropout scale; empty if no dropout
};

struct ForwardTrace {
  Mode mode = Mode::eval;
  std::vector<LayerTrace> layers;
};

struct ForwardResult {
  Matrix output;
  ForwardTrace trace;
};

struct LayerGradient {
  Matrix weights;
  Vector bias;
};

struct MlpGradients {
  std::vector<LayerGradient> layers;
  Matrix input;  // dLoss/dX

  [[nodiscard]] std::vector<double> flatten() const;
  void scale(double factor);
  void add(const MlpGradients& other);
};

double apply_activation(Activation act, double z) noexcept;

class Mlp {
 public:
  Mlp() = default;
  Mlp(MlpSpec spec, std::vector<DenseLayer> layers);

  static Mlp init(const MlpSpec& spec, Rng& rng, InitScheme scheme = InitScheme::fan_in_uniform);
  static Mlp zeros(const MlpSpec& spec);

  /// Train mode draws dropout masks from `rng` (required when the spec has
  /// dropout); eval mode is deterministic and ignores `rng`.
  [[nodiscard]] ForwardResult forward(const Matrix& x, Mode mode, Rng* rng = nullptr) const;
  [[nodiscard]] Matrix predict(const Matrix& x) const;
  [[nodiscard]] MlpGradients backward(const ForwardTrace& trace, const Matrix& d_output) const;

  [[nodiscard]] const MlpSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  [[nodiscard]] std::vector<DenseLayer>& layers() noexcept { return layers_; }

  [[nodiscard]] Index parameter_count() const noexcept;
  [[nodiscard]] std::vector<Index> layer_parameter_counts() const;
  /// Layer-major flattening: each layer's weights (column-major) then bias.
  [[nodiscard]] std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);

 private:
  MlpSpec spec_;
  std::vector<DenseLayer> layers_;
};

}  // namespace qadv::nn
