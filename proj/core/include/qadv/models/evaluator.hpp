#pragma once

#include <vector>

#include "qadv/nn/mlp.hpp"

namespace qadv::models {

/// Feedback network reading [features, middle block, explanation] row-wise.
/// For the supervised variants the middle block is the single prediction
/// column; for the autoencoder it is the reconstruction.
struct EvaluatorNet {
  nn::Mlp net;
  Index feature_dim = 8;
  Index middle_dim = 1;
  Index explanation_dim = 8;

  static EvaluatorNet create(Index feature_dim, Index middle_dim, Index explanation_dim, Rng& rng,
                             const std::vector<Index>& hidden = {32, 16},
                             nn::InitScheme init = nn::InitScheme::fan_in_uniform);
  [[nodiscard]] Index input_dim() const noexcept { return feature_dim + middle_dim + explanation_dim; }
};

nn::MlpSpec evaluator_spec(Index input_dim, const std::vector<Index>& hidden = {32, 16});

/// Concatenation layout: columns [0, f) features, [f, f+m) middle, rest explanation.
Matrix evaluator_input(const EvaluatorNet& net, const Matrix& features, const Matrix& middle, const Matrix& explanation);

struct EvaluatorForward {
  Vector output;
  nn::ForwardTrace trace;
};

EvaluatorForward evaluator_forward(const EvaluatorNet& net, const Matrix& features, const Matrix& middle,
                                   const Matrix& explanation);

struct EvaluatorGradients {
  nn::MlpGradients net;
  Matrix d_features;
  Matrix d_middle;
  Matrix d_explanation;
};

EvaluatorGradients evaluator_backward(const EvaluatorNet& net, const nn::ForwardTrace& trace, const Vector& d_output);

}  // namespace qadv::models
