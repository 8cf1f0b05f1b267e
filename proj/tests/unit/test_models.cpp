#include <gtest/gtest.h>

#include <cmath>

#include "gradcheck.hpp"
#include "qadv/error.hpp"
#include "qadv/models/autoencoder.hpp"
#include "qadv/models/evaluator.hpp"
#include "qadv/models/gan.hpp"
#include "qadv/models/hybrid_qnn.hpp"

using namespace qadv;
using namespace qadv::models;

namespace {

Matrix random_matrix(Index r, Index c, Rng& rng, double lo = 0.0, double hi = 1.0) {
  Matrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
  return m;
}

QnnConfig tiny_qnn(int n_qubits = 2, Index input = 3) {
  QnnConfig cfg;
  cfg.input_dim = input;
  cfg.hidden = {8, 6};
  cfg.n_qubits = n_qubits;
  return cfg;
}

// Loss probe sum(g .* yhat) with the dropout masks replayed from `mask_seed`.
double qnn_probe(const HybridQnn& model, const Matrix& x, const Vector& g, std::uint64_t mask_seed) {
  Rng rng(mask_seed);
  return qnn_forward(model, x, nn::Mode::train, &rng).yhat.dot(g);
}

double qnn_gradient_error(const HybridQnn& model, const Matrix& x, const Vector& g, std::uint64_t mask_seed) {
  Rng rng(mask_seed);
  const auto fwd = qnn_forward(model, x, nn::Mode::train, &rng);
  const auto analytic = qnn_backward(model, fwd.trace, g).trunk.flatten();
  const auto numeric = qadv::testing::numeric_gradient(
      [&](std::span<const double> p) {
        HybridQnn copy = model;
        copy.trunk.set_parameters(p);
        return qnn_probe(copy, x, g, mask_seed);
      },
      model.trunk.parameters());
  return qadv::testing::relative_error(analytic, numeric);
}

}  // namespace

TEST(HybridQnn, DefaultArchitectureCounts) {
  Rng rng(1);
  const auto model = HybridQnn::create({}, rng);
  EXPECT_EQ(model.trunk.layer_parameter_counts(), (std::vector<Index>{2304, 32896, 8256, 2080, 264}));
  // The fifth layer emits 2 * n_qubits = 8 angles, hence 264 parameters in
  // place of the 66 a 32 -> 2 layer would have.
  EXPECT_EQ(model.parameter_count(), 45800);
  EXPECT_EQ(model.trunk.spec().dropout_after, (std::vector<std::size_t>{1, 4}));
  EXPECT_DOUBLE_EQ(model.trunk.spec().dropout_rate, 0.25);
}

TEST(HybridQnn, ZeroTrunkGivesSigmoidOfOne) {
  const auto spec = qnn_trunk_spec({});
  HybridQnn model;
  model.trunk = nn::Mlp::zeros(spec);
  model.circuit = {4, qsim::Entangler::none};
  const Vector yhat = qnn_predict(model, Matrix::Constant(3, 8, 0.4));
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(yhat(i), 0.7310585786300049, 1e-15);
}

TEST(HybridQnn, PredictionsInsideUnitIntervalAndDeterministic) {
  Rng rng(2);
  const auto model = HybridQnn::create({}, rng);
  const Matrix x = random_matrix(20, 8, rng);
  const Vector a = qnn_predict(model, x);
  EXPECT_EQ(a, qnn_predict(model, x));
  EXPECT_EQ(a, qnn_forward(model, x, nn::Mode::eval).yhat);
  EXPECT_GT(a.minCoeff(), 0.0);
  EXPECT_LT(a.maxCoeff(), 1.0);
  EXPECT_THROW((void)qnn_predict(model, Matrix::Zero(2, 7)), Error);
}

TEST(HybridQnn, ZeroUpstreamAndCosineExtremum) {
  Rng rng(3);
  const auto model = HybridQnn::create(tiny_qnn(), rng);
  const Matrix x = random_matrix(2, 3, rng);
  const auto fwd = qnn_forward(model, x, nn::Mode::eval);
  for (double g : qnn_backward(model, fwd.trace, Vector::Zero(2)).trunk.flatten()) EXPECT_EQ(g, 0.0);

  // Zero trunk: every angle is 0, where the circuit gradient vanishes.
  HybridQnn flat = model;
  flat.trunk = nn::Mlp::zeros(model.trunk.spec());
  const auto f0 = qnn_forward(flat, x, nn::Mode::eval);
  for (double g : qnn_backward(flat, f0.trace, Vector::Ones(2)).trunk.flatten()) EXPECT_EQ(g, 0.0);
}

TEST(HybridQnn, ChainRuleMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto cfg = tiny_qnn(2 + static_cast<int>(seed % 3), 3);
    cfg.entangler = static_cast<qsim::Entangler>(seed % 3);
    const auto model = HybridQnn::create(cfg, rng);
    const Matrix x = random_matrix(2, 3, rng);
    Vector g(2);
    g << rng.normal(), rng.normal();
    EXPECT_LT(qnn_gradient_error(model, x, g, 100 + seed), 1e-4) << "seed " << seed;
  }
}

TEST(HybridQnn, AblatedVariantsMatchFiniteDifferences) {
  Rng rng(4);
  auto classical = tiny_qnn();
  classical.quantum = false;
  const auto model = HybridQnn::create(classical, rng);
  const Matrix x = random_matrix(2, 3, rng);
  const Vector g = Vector::Ones(2);
  EXPECT_LT(qnn_gradient_error(model, x, g, 5), 1e-4);
  const auto before = qsim::circuit_evaluations();
  (void)qnn_predict(model, x);
  EXPECT_EQ(qsim::circuit_evaluations(), before);

  auto direct = tiny_qnn(2, 4);
  direct.classical_trunk = false;
  const auto bare = HybridQnn::create(direct, rng);
  EXPECT_EQ(bare.parameter_count(), 0);
  const Matrix x4 = random_matrix(2, 4, rng);
  const auto fwd = qnn_forward(bare, x4, nn::Mode::eval);
  EXPECT_EQ(fwd.trace.angles, x4);
}

TEST(Evaluator, ArchitectureCounts) {
  Rng rng(5);
  const auto e = EvaluatorNet::create(8, 1, 8, rng);
  EXPECT_EQ(e.input_dim(), 17);
  EXPECT_EQ(e.net.parameter_count(), 1121);
  EXPECT_EQ(e.net.layer_parameter_counts(), (std::vector<Index>{576, 528, 17}));
  const auto ssl = EvaluatorNet::create(8, 8, 8, rng);
  EXPECT_EQ(ssl.input_dim(), 24);
}

TEST(Evaluator, ZeroWeightsEmitLastBias) {
  Rng rng(6);
  auto e = EvaluatorNet::create(8, 1, 8, rng);
  for (auto& layer : e.net.layers()) layer.weights.setZero();
  const double bias = e.net.layers().back().bias(0);
  const auto out = evaluator_forward(e, random_matrix(4, 8, rng), random_matrix(4, 1, rng), random_matrix(4, 8, rng));
  for (Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(out.output(i), bias);
}

TEST(Evaluator, ConcatenationLayoutIsPinned) {
  Rng rng(7);
  const Matrix feats = Vector::LinSpaced(8, 0.1, 0.8).transpose();
  const Matrix middle = Matrix::Constant(1, 1, 0.9);
  const Matrix expl = Vector::LinSpaced(8, 1.1, 1.8).transpose();
  for (Index k = 0; k < 17; ++k) {
    auto e = EvaluatorNet::create(8, 1, 8, rng);
    for (auto& layer : e.net.layers()) {
      layer.weights.setZero();
      layer.bias.setZero();
    }
    e.net.layers()[0].weights(0, k) = 1.0;
    e.net.layers()[1].weights(0, 0) = 1.0;
    e.net.layers()[2].weights(0, 0) = 1.0;
    const double expected = k < 8 ? feats(0, k) : k == 8 ? 0.9 : expl(0, k - 9);
    EXPECT_DOUBLE_EQ(evaluator_forward(e, feats, middle, expl).output(0), expected) << "column " << k;
  }
  auto e = EvaluatorNet::create(8, 1, 8, rng);
  EXPECT_THROW(evaluator_forward(e, feats, Matrix::Zero(1, 2), expl), Error);
}

TEST(Evaluator, GradientThroughConcatenation) {
  Rng rng(8);
  const auto e = EvaluatorNet::create(3, 1, 3, rng);
  const Matrix f = random_matrix(2, 3, rng), m = random_matrix(2, 1, rng), x = random_matrix(2, 3, rng);
  const Vector g = Vector::Constant(2, 0.7);
  const auto fwd = evaluator_forward(e, f, m, x);
  const auto grads = evaluator_backward(e, fwd.trace, g);

  Matrix joined(2, 7);
  joined << f, m, x;
  std::vector<double> flat(joined.data(), joined.data() + joined.size());
  const auto numeric = qadv::testing::numeric_gradient(
      [&](std::span<const double> v) {
        const Matrix j = Eigen::Map<const Matrix>(v.data(), 2, 7);
        return evaluator_forward(e, j.leftCols(3), j.col(3), j.rightCols(3)).output.dot(g);
      },
      flat);
  Matrix analytic(2, 7);
  analytic << grads.d_features, grads.d_middle, grads.d_explanation;
  EXPECT_LT(qadv::testing::relative_error(std::vector<double>(analytic.data(), analytic.data() + 14), numeric), 1e-6);

  const auto numeric_w = qadv::testing::numeric_gradient(
      [&](std::span<const double> p) {
        EvaluatorNet copy = e;
        copy.net.set_parameters(p);
        return evaluator_forward(copy, f, m, x).output.dot(g);
      },
      e.net.parameters());
  EXPECT_LT(qadv::testing::relative_error(grads.net.flatten(), numeric_w), 1e-6);
}

TEST(Gan, RangesAndDeterminism) {
  Rng init(9);
  const auto gen = GeneratorNet::create(16, 9, init);
  const auto disc = DiscriminatorNet::create(9, init);
  EXPECT_EQ(gen.net.spec().layer_dims, (std::vector<Index>{16, 64, 32, 9}));
  EXPECT_EQ(disc.net.spec().layer_dims, (std::vector<Index>{9, 64, 32, 1}));
  Rng a(3), b(3);
  const Matrix rows = generator_sample(gen, 50, a);
  EXPECT_EQ(rows, generator_sample(gen, 50, b));
  EXPECT_GE(rows.minCoeff(), 0.0);
  EXPECT_LE(rows.maxCoeff(), 1.0);
  Rng c(4);
  const Vector p = discriminator_forward(disc, random_matrix(50, 9, c, -5.0, 5.0));
  EXPECT_GT(p.minCoeff(), 0.0);
  EXPECT_LT(p.maxCoeff(), 1.0);
  EXPECT_EQ(sample_latent(7, 16, c).cols(), 16);
}

TEST(Autoencoder, ZeroEncoderGivesUnitBottleneck) {
  Rng rng(10);
  auto ae = QuantumAutoencoder::create({}, rng);
  for (auto& layer : ae.encoder.layers()) {
    layer.weights.setZero();
    layer.bias.setZero();
  }
  const auto out = qae_forward(ae, random_matrix(3, 8, rng), nn::Mode::eval);
  EXPECT_TRUE(out.bottleneck.isOnes());
  EXPECT_EQ(out.reconstruction.cols(), 8);
}

TEST(Autoencoder, RangesAndShapes) {
  Rng rng(11);
  const auto ae = QuantumAutoencoder::create({}, rng);
  EXPECT_EQ(ae.encoder.spec().layer_dims, (std::vector<Index>{8, 32, 16, 8}));
  EXPECT_EQ(ae.decoder.spec().layer_dims, (std::vector<Index>{4, 16, 32, 8}));
  const auto out = qae_forward(ae, random_matrix(20, 8, rng, -3.0, 3.0), nn::Mode::eval);
  EXPECT_GE(out.bottleneck.minCoeff(), -1.0);
  EXPECT_LE(out.bottleneck.maxCoeff(), 1.0);
  EXPECT_GE(out.reconstruction.minCoeff(), 0.0);
  EXPECT_LE(out.reconstruction.maxCoeff(), 1.0);
  EXPECT_THROW(qae_forward(ae, Matrix::Zero(2, 5), nn::Mode::eval), Error);
}

TEST(Autoencoder, EndToEndGradient) {
  Rng rng(12);
  QaeConfig cfg;
  cfg.input_dim = 3;
  cfg.encoder_hidden = {5};
  cfg.decoder_hidden = {4};
  cfg.n_qubits = 2;
  cfg.entangler = qsim::Entangler::ring_after;
  const auto ae = QuantumAutoencoder::create(cfg, rng);
  const Matrix x = random_matrix(2, 3, rng);
  const Matrix g = random_matrix(2, 3, rng, -1.0, 1.0);
  const auto fwd = qae_forward(ae, x, nn::Mode::train);
  const auto grads = qae_backward(ae, fwd.trace, g);
  auto analytic = grads.encoder.flatten();
  const auto dec = grads.decoder.flatten();
  analytic.insert(analytic.end(), dec.begin(), dec.end());

  auto params = ae.encoder.parameters();
  const auto dec_params = ae.decoder.parameters();
  const std::size_t n_enc = params.size();
  params.insert(params.end(), dec_params.begin(), dec_params.end());
  const auto numeric = qadv::testing::numeric_gradient(
      [&](std::span<const double> p) {
        QuantumAutoencoder copy = ae;
        copy.encoder.set_parameters(p.first(n_enc));
        copy.decoder.set_parameters(p.subspan(n_enc));
        return (qae_forward(copy, x, nn::Mode::train).reconstruction.array() * g.array()).sum();
      },
      params);
  EXPECT_LT(qadv::testing::relative_error(analytic, numeric), 1e-4);
}

TEST(Autoencoder, ReadoutFitsLinearTarget) {
  Rng rng(13);
  const auto ae0 = QuantumAutoencoder::create({}, rng);
  auto ae = ae0;
  const Matrix x = random_matrix(40, 8, rng);
  const Matrix codes = qae_forward(ae, x, nn::Mode::eval).bottleneck;
  const Vector y = (0.3 + 0.1 * codes.col(0).array()).matrix();
  fit_readout(ae, x, y);
  EXPECT_LT((qae_predict(ae, x) - y).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_EQ(qae_instance_error(ae, x).size(), 40);
}
