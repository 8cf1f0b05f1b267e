#include "qadv/models/evaluator.hpp"

#include "qadv/error.hpp"

namespace qadv::models {

nn::MlpSpec evaluator_spec(Index input_dim, const std::vector<Index>& hidden) {
  nn::MlpSpec spec;
  spec.layer_dims.push_back(input_dim);
  for (const auto h : hidden) spec.layer_dims.push_back(h);
  spec.layer_dims.push_back(1);
  spec.activations.assign(hidden.size(), nn::Activation::relu);
  spec.activations.push_back(nn::Activation::identity);
  return spec;
}

EvaluatorNet EvaluatorNet::create(Index feature_dim, Index middle_dim, Index explanation_dim, Rng& rng,
                                  const std::vector<Index>& hidden, nn::InitScheme init) {
  EvaluatorNet e;
  e.feature_dim = feature_dim;
  e.middle_dim = middle_dim;
  e.explanation_dim = explanation_dim;
  e.net = nn::Mlp::init(evaluator_spec(e.input_dim(), hidden), rng, init);
  return e;
}

Matrix evaluator_input(const EvaluatorNet& net, const Matrix& features, const Matrix& middle, const Matrix& explanation) {
  const Index b = features.rows();
  if (features.cols() != net.feature_dim || middle.cols() != net.middle_dim || explanation.cols() != net.explanation_dim)
    raise(Errc::ShapeMismatch, "evaluator input blocks have the wrong widths");
  if (middle.rows() != b || explanation.rows() != b) raise(Errc::ShapeMismatch, "evaluator input blocks differ in rows");
  Matrix input(b, net.input_dim());
  input << features, middle, explanation;
  return input;
}

EvaluatorForward evaluator_forward(const EvaluatorNet& net, const Matrix& features, const Matrix& middle,
                                   const Matrix& explanation) {
  auto result = net.net.forward(evaluator_input(net, features, middle, explanation), nn::Mode::train);
  return {result.output.col(0), std::move(result.trace)};
}

EvaluatorGradients evaluator_backward(const EvaluatorNet& net, const nn::ForwardTrace& trace, const Vector& d_output) {
  EvaluatorGradients g;
  g.net = net.net.backward(trace, d_output);
  g.d_features = g.net.input.leftCols(net.feature_dim);
  g.d_middle = g.net.input.middleCols(net.feature_dim, net.middle_dim);
  g.d_explanation = g.net.input.rightCols(net.explanation_dim);
  return g;
}

}  // namespace qadv::models
