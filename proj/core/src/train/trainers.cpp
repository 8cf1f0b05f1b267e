#include "qadv/train/trainers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qadv/error.hpp"
#include "qadv/nn/loss.hpp"
#include "qadv/qsim/circuit.hpp"

namespace qadv::train {

namespace {

// Seed streams derived from the run seed.
constexpr std::uint64_t kStreamQnnInit = 1;
constexpr std::uint64_t kStreamEvaluatorInit = 2;
constexpr std::uint64_t kStreamDropout = 3;
constexpr std::uint64_t kStreamShuffle = 4;
constexpr std::uint64_t kStreamExplain = 5;
constexpr std::uint64_t kStreamGenerator = 6;
constexpr std::uint64_t kStreamDiscriminator = 7;
constexpr std::uint64_t kStreamLatent = 8;
constexpr std::uint64_t kStreamAugment = 9;
constexpr std::uint64_t kStreamQaeInit = 10;
constexpr std::uint64_t kStreamGanShuffle = 11;

constexpr double kModeCollapseStd = 1e-3;

void notify(const TrainHooks& hooks, std::string_view step) {
  if (hooks.on_step) hooks.on_step(step);
}

std::vector<Index> permutation(Index n, std::uint64_t seed) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng.engine());
  return order;
}

template <class Fn>
void for_each_batch(const std::vector<Index>& order, Index batch_size, Fn&& fn) {
  const auto n = static_cast<Index>(order.size());
  std::size_t b = 0;
  for (Index start = 0; start < n; start += batch_size, ++b) {
    const Index len = std::min(batch_size, n - start);
    std::vector<Index> rows(order.begin() + start, order.begin() + start + len);
    fn(b, rows);
  }
}

void check_finite(double value, int epoch, std::size_t batch, const char* what) {
  if (!std::isfinite(value))
    raise(Errc::NonFiniteLoss, std::string(what) + " at epoch " + std::to_string(epoch) + ", batch " +
                                   std::to_string(batch));
}

void check_training_set(const data::Dataset& ds, const TrainConfig& cfg) {
  const Index n = ds.features.rows();
  if (n == 0) raise(Errc::EmptyTraining, "training set has no rows");
  if (ds.target.size() != n) raise(Errc::ShapeMismatch, "feature and target row counts differ");
  if (cfg.batch_size > n)
    raise(Errc::Config, "batch_size " + std::to_string(cfg.batch_size) + " exceeds training rows " + std::to_string(n));
}

Vector gather(const Vector& v, const std::vector<Index>& rows) { return data::select_rows(v, rows); }
Matrix gather(const Matrix& m, const std::vector<Index>& rows) { return data::select_rows(m, rows); }

double column_std_mean(const Matrix& m) {
  if (m.rows() < 2) return 0.0;
  double total = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    const double mean = m.col(j).mean();
    total += std::sqrt((m.col(j).array() - mean).square().mean());
  }
  return total / static_cast<double>(m.cols());
}

struct EpochAccumulator {
  double m1_mse = 0.0, m2 = 0.0, g = 0.0, d = 0.0;
  std::size_t batches = 0;

  EpochRecord finish(int epoch, double alpha, bool gan) const {
    const double k = static_cast<double>(std::max<std::size_t>(batches, 1));
    EpochRecord r;
    r.epoch = epoch;
    r.loss_m1_mse = m1_mse / k;
    r.loss_m2 = m2 / k;
    r.loss_m1 = r.loss_m1_mse + alpha * r.loss_m2;
    if (gan) {
      r.loss_g = g / k;
      r.loss_d = d / k;
    }
    return r;
  }
};

void run_supervised_epochs(SupervisedState& st, const Matrix& x, const Vector& y, const Vector& labelled,
                           TrainHistory& history, const TrainHooks& hooks) {
  const auto& cfg = st.cfg;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    EpochAccumulator acc;
    const auto order = permutation(x.rows(), derive_seed(cfg.seed, kStreamShuffle, static_cast<std::uint64_t>(epoch)));
    for_each_batch(order, cfg.batch_size, [&](std::size_t b, const std::vector<Index>& rows) {
      const Vector mask = labelled.size() ? gather(labelled, rows) : Vector();
      const auto losses = supervised_step(st, gather(x, rows), gather(y, rows), mask,
                                          batch_explain_seed(cfg.seed, epoch, b), hooks);
      check_finite(losses.m1, epoch, b, "loss_m1");
      acc.m1_mse += losses.m1_mse;
      acc.m2 += losses.m2;
      ++acc.batches;
    });
    history.epochs.push_back(acc.finish(epoch, cfg.alpha, false));
  }
}

}  // namespace

std::uint64_t batch_explain_seed(std::uint64_t seed, int epoch, std::size_t batch) {
  return derive_seed(seed, kStreamExplain, (static_cast<std::uint64_t>(epoch) << 32) ^ batch);
}

TrainConfig resolve_config(const TrainConfig& cfg, Index dims) {
  TrainConfig out = apply_ablation(cfg);
  out.qnn.input_dim = dims;
  out.qae.input_dim = dims;
  out.qnn.init = out.init;
  out.qae.init = out.init;
  out.validate();
  out.qnn.validate();
  out.qae.validate();
  return out;
}

SupervisedState SupervisedState::create(const TrainConfig& cfg, const Matrix& explainer_data) {
  SupervisedState st;
  st.cfg = cfg;
  Rng qnn_rng(derive_seed(cfg.seed, kStreamQnnInit));
  st.qnn = models::HybridQnn::create(cfg.qnn, qnn_rng);
  Rng eval_rng(derive_seed(cfg.seed, kStreamEvaluatorInit));
  const Index d = cfg.qnn.input_dim;
  st.evaluator = models::EvaluatorNet::create(d, 1, d, eval_rng, {32, 16}, cfg.init);
  st.qnn_opt = nn::make_adam(st.qnn.trunk, {.lr = cfg.lr_main});
  st.evaluator_opt = nn::make_adam(st.evaluator.net, {.lr = cfg.lr_main});
  st.explainer = xai::fit_explainer(explainer_data, cfg.explainer);
  st.dropout_rng = Rng(derive_seed(cfg.seed, kStreamDropout));
  return st;
}

StepLosses supervised_step(SupervisedState& st, const Matrix& x, const Vector& y, const Vector& labelled,
                           std::uint64_t explain_seed, const TrainHooks& hooks) {
  const Index batch = x.rows();
  if (y.size() != batch) raise(Errc::ShapeMismatch, "batch features and targets differ in rows");
  if (labelled.size() != 0 && labelled.size() != batch) raise(Errc::ShapeMismatch, "label mask has wrong length");
  const Vector mask = labelled.size() ? labelled : Vector::Ones(batch).eval();

  notify(hooks, "qnn_forward");
  auto fwd = models::qnn_forward(st.qnn, x, nn::Mode::train, &st.dropout_rng);
  const double n_labelled = mask.sum();
  const Vector diff = (fwd.yhat - y).cwiseProduct(mask);
  StepLosses out;
  Vector d_yhat = Vector::Zero(batch);
  if (n_labelled > 0) {
    out.m1_mse = diff.squaredNorm() / n_labelled;
    d_yhat = 2.0 * diff / n_labelled;
  }

  notify(hooks, "explain");
  const auto& qnn = st.qnn;
  const xai::PredictFn predict = [&qnn](const Matrix& z) { return models::qnn_predict(qnn, z); };
  const Matrix expl = xai::weight_matrix(xai::explain_batch(st.explainer, predict, x, explain_seed));

  notify(hooks, "evaluator_loss");
  Vector target(batch);
  for (Index i = 0; i < batch; ++i) target(i) = mask(i) > 0 ? y(i) : fwd.yhat(i);
  const Matrix middle = fwd.yhat;
  const auto ev = models::evaluator_forward(st.evaluator, x, middle, expl);
  const auto l2 = nn::mse_loss(ev.output, target);
  out.m2 = l2.value;
  out.m1 = out.m1_mse + st.cfg.alpha * out.m2;
  const auto eg = models::evaluator_backward(st.evaluator, ev.trace, l2.grad.col(0));

  notify(hooks, "qnn_update");
  if (st.cfg.feedback_gradient == FeedbackGradient::through_prediction && st.cfg.alpha != 0.0)
    d_yhat += st.cfg.alpha * eg.d_middle.col(0);
  if (st.qnn.config.classical_trunk) {
    const auto qg = models::qnn_backward(st.qnn, fwd.trace, d_yhat);
    nn::adam_step(st.qnn_opt, st.qnn.trunk, qg.trunk);
  }
  nn::adam_step(st.evaluator_opt, st.evaluator.net, eg.net);
  return out;
}

VanillaResult train_vanilla(const data::Dataset& train, const TrainConfig& cfg_in, const TrainHooks& hooks) {
  const auto cfg = resolve_config(cfg_in, train.features.cols());
  check_training_set(train, cfg);
  const auto start = qsim::circuit_evaluations();
  auto st = SupervisedState::create(cfg, train.features.values);
  TrainHistory history;
  run_supervised_epochs(st, train.features.values, train.target.values, Vector(), history, hooks);
  history.circuit_evaluations = qsim::circuit_evaluations() - start;
  return {std::move(st.qnn), std::move(st.evaluator), std::move(history)};
}

GanState GanState::create(const TrainConfig& cfg, Index row_dim) {
  GanState g;
  Rng gen_rng(derive_seed(cfg.seed, kStreamGenerator));
  g.generator = models::GeneratorNet::create(cfg.latent_dim, row_dim, gen_rng, cfg.init);
  Rng disc_rng(derive_seed(cfg.seed, kStreamDiscriminator));
  g.discriminator = models::DiscriminatorNet::create(row_dim, disc_rng, cfg.init);
  g.generator_opt = nn::make_adam(g.generator.net, {.lr = cfg.lr_gan});
  g.discriminator_opt = nn::make_adam(g.discriminator.net, {.lr = cfg.lr_gan});
  g.latent_rng = Rng(derive_seed(cfg.seed, kStreamLatent));
  return g;
}

GeneratedBatch generate_batch(GanState& gan, Index rows) {
  const Matrix z = models::sample_latent(rows, gan.generator.latent_dim, gan.latent_rng);
  auto fwd = gan.generator.net.forward(z, nn::Mode::train);
  return {std::move(fwd.output), std::move(fwd.trace)};
}

double discriminator_update(GanState& gan, const Matrix& real, const Matrix& fake) {
  if (real.cols() != fake.cols()) raise(Errc::ShapeMismatch, "real and generated rows differ in width");
  Matrix both(real.rows() + fake.rows(), real.cols());
  both << real, fake;
  Matrix labels(both.rows(), 1);
  labels.topRows(real.rows()).setOnes();
  labels.bottomRows(fake.rows()).setZero();
  const auto fwd = gan.discriminator.net.forward(both, nn::Mode::train);
  const auto loss = nn::bce_loss(fwd.output, labels);
  const auto grads = gan.discriminator.net.backward(fwd.trace, loss.grad);
  nn::adam_step(gan.discriminator_opt, gan.discriminator.net, grads);
  return loss.value;
}

double generator_update(GanState& gan, const GeneratedBatch& batch, bool apply) {
  const auto fwd = gan.discriminator.net.forward(batch.rows, nn::Mode::train);
  const Matrix ones = Matrix::Ones(batch.rows.rows(), 1);
  const auto loss = nn::bce_loss(fwd.output, ones);
  if (apply) {
    const auto d_grads = gan.discriminator.net.backward(fwd.trace, loss.grad);
    const auto g_grads = gan.generator.net.backward(batch.trace, d_grads.input);
    nn::adam_step(gan.generator_opt, gan.generator.net, g_grads);
  }
  return loss.value;
}

Matrix gan_rows(const Matrix& x, const Vector& y, bool features_only) {
  if (features_only) return x;
  Matrix out(x.rows(), x.cols() + 1);
  out << x, y;
  return out;
}

GanResult train_qgan1(const data::Dataset& train, const TrainConfig& cfg_in, const TrainHooks& hooks) {
  const auto cfg = resolve_config(cfg_in, train.features.cols());
  check_training_set(train, cfg);
  const auto start = qsim::circuit_evaluations();
  const Matrix& x = train.features.values;
  const Vector& y = train.target.values;
  const Index d = x.cols();
  const Matrix real = gan_rows(x, y, cfg.gan_features_only);

  TrainHistory history;
  auto gan = GanState::create(cfg, real.cols());
  if (hooks.init_generator) hooks.init_generator(gan.generator);
  for (int epoch = 1; epoch <= cfg.gan_epochs; ++epoch) {
    EpochAccumulator acc;
    double spread = 0.0;
    const auto order =
        permutation(real.rows(), derive_seed(cfg.seed, kStreamGanShuffle, static_cast<std::uint64_t>(epoch)));
    for_each_batch(order, cfg.batch_size, [&](std::size_t b, const std::vector<Index>& rows) {
      const Matrix real_batch = gather(real, rows);
      notify(hooks, "discriminator_update");
      const auto fake = generate_batch(gan, real_batch.rows());
      const double ld = discriminator_update(gan, real_batch, fake.rows);
      notify(hooks, "generator_update");
      const double lg = generator_update(gan, fake, !hooks.freeze_generator);
      check_finite(ld, epoch, b, "loss_d");
      check_finite(lg, epoch, b, "loss_g");
      acc.d += ld;
      acc.g += lg;
      ++acc.batches;
      spread = column_std_mean(fake.rows);
    });
    if (spread < kModeCollapseStd)
      history.warnings.push_back("ModeCollapseWarning: generated batch std " + std::to_string(spread) + " at GAN epoch " +
                                 std::to_string(epoch));
    auto rec = acc.finish(epoch, 0.0, true);
    history.gan_pretrain.push_back(rec);
  }

  // Stage 2: generator frozen, augmentation drawn once.
  const auto n_syn = static_cast<Index>(std::ceil(cfg.synthetic_ratio * static_cast<double>(x.rows())));
  Matrix x_aug = x;
  Vector y_aug = y;
  Vector labelled;
  if (n_syn > 0) {
    Rng aug_rng(derive_seed(cfg.seed, kStreamAugment));
    const Matrix syn = models::generator_sample(gan.generator, n_syn, aug_rng);
    x_aug.conservativeResize(x.rows() + n_syn, Eigen::NoChange);
    x_aug.bottomRows(n_syn) = syn.leftCols(d);
    y_aug.conservativeResize(y.size() + n_syn);
    labelled = Vector::Ones(x.rows() + n_syn);
    if (cfg.gan_features_only) {
      y_aug.tail(n_syn).setZero();
      labelled.tail(n_syn).setZero();
    } else {
      y_aug.tail(n_syn) = syn.col(d);
    }
  }
  auto st = SupervisedState::create(cfg, x);
  run_supervised_epochs(st, x_aug, y_aug, labelled, history, hooks);
  history.circuit_evaluations = qsim::circuit_evaluations() - start;
  return {std::move(gan.generator), std::move(gan.discriminator), std::move(st.qnn), std::move(st.evaluator),
          std::move(history)};
}

GanResult train_qgan2(const data::Dataset& train, const TrainConfig& cfg_in, const TrainHooks& hooks) {
  const auto cfg = resolve_config(cfg_in, train.features.cols());
  check_training_set(train, cfg);
  const auto start = qsim::circuit_evaluations();
  const Matrix& x = train.features.values;
  const Vector& y = train.target.values;
  const Index d = x.cols();
  const Matrix real = gan_rows(x, y, cfg.gan_features_only);

  TrainHistory history;
  auto gan = GanState::create(cfg, real.cols());
  if (hooks.init_generator) hooks.init_generator(gan.generator);
  auto st = SupervisedState::create(cfg, x);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    EpochAccumulator acc;
    const auto order = permutation(x.rows(), derive_seed(cfg.seed, kStreamShuffle, static_cast<std::uint64_t>(epoch)));
    for_each_batch(order, cfg.batch_size, [&](std::size_t b, const std::vector<Index>& rows) {
      const Index n_real = static_cast<Index>(rows.size());
      const auto n_syn = static_cast<Index>(std::ceil(cfg.synthetic_ratio * static_cast<double>(n_real)));

      notify(hooks, "generator_sample");
      const auto fake = generate_batch(gan, std::max<Index>(n_syn, 1));

      Matrix xb(n_real + n_syn, d);
      Vector yb(n_real + n_syn);
      Vector mask = Vector::Ones(n_real + n_syn);
      xb.topRows(n_real) = gather(x, rows);
      yb.head(n_real) = gather(y, rows);
      if (n_syn > 0) {
        xb.bottomRows(n_syn) = fake.rows.topRows(n_syn).leftCols(d);
        if (cfg.gan_features_only) {
          yb.tail(n_syn).setZero();
          mask.tail(n_syn).setZero();
        } else {
          yb.tail(n_syn) = fake.rows.topRows(n_syn).col(d);
        }
      }
      const auto losses = supervised_step(st, xb, yb, mask, batch_explain_seed(cfg.seed, epoch, b), hooks);
      check_finite(losses.m1, epoch, b, "loss_m1");

      notify(hooks, "discriminator_update");
      const double ld = discriminator_update(gan, gather(real, rows), fake.rows);
      notify(hooks, "generator_update");
      const double lg = generator_update(gan, fake, !hooks.freeze_generator);
      check_finite(ld, epoch, b, "loss_d");
      check_finite(lg, epoch, b, "loss_g");

      acc.m1_mse += losses.m1_mse;
      acc.m2 += losses.m2;
      acc.d += ld;
      acc.g += lg;
      ++acc.batches;
    });
    history.epochs.push_back(acc.finish(epoch, cfg.alpha, true));
  }
  history.circuit_evaluations = qsim::circuit_evaluations() - start;
  return {std::move(gan.generator), std::move(gan.discriminator), std::move(st.qnn), std::move(st.evaluator),
          std::move(history)};
}

QsslResult train_qssl(const data::Dataset& train, const TrainConfig& cfg_in, const TrainHooks& hooks) {
  if (cfg_in.ablation == Ablation::no_quantum || cfg_in.ablation == Ablation::no_classical)
    raise(Errc::Config, "ablation '" + std::string(to_string(cfg_in.ablation)) +
                            "' is defined for the hybrid QNN only, not the autoencoder");
  const auto cfg = resolve_config(cfg_in, train.features.cols());
  check_training_set(train, cfg);
  const auto start = qsim::circuit_evaluations();
  const Matrix& x = train.features.values;
  const Index d = x.cols();

  Rng ae_rng(derive_seed(cfg.seed, kStreamQaeInit));
  auto ae = models::QuantumAutoencoder::create(cfg.qae, ae_rng);
  Rng eval_rng(derive_seed(cfg.seed, kStreamEvaluatorInit));
  auto evaluator = models::EvaluatorNet::create(d, d, d, eval_rng, {32, 16}, cfg.init);
  auto enc_opt = nn::make_adam(ae.encoder, {.lr = cfg.lr_main});
  auto dec_opt = nn::make_adam(ae.decoder, {.lr = cfg.lr_main});
  auto eval_opt = nn::make_adam(evaluator.net, {.lr = cfg.lr_main});
  const auto explainer = xai::fit_explainer(x, cfg.explainer);
  Rng dropout_rng(derive_seed(cfg.seed, kStreamDropout));

  TrainHistory history;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    EpochAccumulator acc;
    const auto order = permutation(x.rows(), derive_seed(cfg.seed, kStreamShuffle, static_cast<std::uint64_t>(epoch)));
    for_each_batch(order, cfg.batch_size, [&](std::size_t b, const std::vector<Index>& rows) {
      const Matrix xb = gather(x, rows);
      notify(hooks, "qae_forward");
      const auto fwd = models::qae_forward(ae, xb, nn::Mode::train, &dropout_rng);
      const auto rec = nn::mse_loss(fwd.reconstruction, xb);

      notify(hooks, "explain");
      const xai::PredictFn predict = [&ae](const Matrix& z) { return models::qae_instance_error(ae, z); };
      const Matrix expl =
          xai::weight_matrix(xai::explain_batch(explainer, predict, xb, batch_explain_seed(cfg.seed, epoch, b)));

      notify(hooks, "evaluator_loss");
      const Vector instance_error = (fwd.reconstruction - xb).array().square().rowwise().mean();
      const auto ev = models::evaluator_forward(evaluator, xb, fwd.reconstruction, expl);
      const auto l2 = nn::mse_loss(ev.output, instance_error);
      const auto eg = models::evaluator_backward(evaluator, ev.trace, l2.grad.col(0));
      const double total = rec.value + cfg.alpha * l2.value;
      check_finite(total, epoch, b, "loss_m1");

      notify(hooks, "qae_update");
      Matrix d_rec = rec.grad;
      if (cfg.feedback_gradient == FeedbackGradient::through_prediction && cfg.alpha != 0.0)
        d_rec += cfg.alpha * eg.d_middle;
      const auto g = models::qae_backward(ae, fwd.trace, d_rec);
      nn::adam_step(enc_opt, ae.encoder, g.encoder);
      nn::adam_step(dec_opt, ae.decoder, g.decoder);
      nn::adam_step(eval_opt, evaluator.net, eg.net);

      acc.m1_mse += rec.value;
      acc.m2 += l2.value;
      ++acc.batches;
    });
    history.epochs.push_back(acc.finish(epoch, cfg.alpha, false));
  }
  models::fit_readout(ae, x, train.target.values);
  history.circuit_evaluations = qsim::circuit_evaluations() - start;
  return {std::move(ae), std::move(evaluator), std::move(history)};
}

}  // namespace qadv::train
