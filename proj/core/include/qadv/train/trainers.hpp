#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "qadv/data/frame.hpp"
#include "qadv/models/autoencoder.hpp"
#include "qadv/models/evaluator.hpp"
#include "qadv/models/gan.hpp"
#include "qadv/models/hybrid_qnn.hpp"
#include "qadv/nn/adam.hpp"
#include "qadv/train/config.hpp"
#include "qadv/train/history.hpp"
#include "qadv/xai/explainer.hpp"

namespace qadv::train {

/// Optional instrumentation. `on_step` receives the name of each sub-step as
/// it starts; `freeze_generator` skips generator updates in the joint GAN
/// loop and `init_generator` may overwrite the freshly initialised generator.
struct TrainHooks {
  std::function<void(std::string_view)> on_step;
  bool freeze_generator = false;
  std::function<void(models::GeneratorNet&)> init_generator;
};

struct VanillaResult {
  models::HybridQnn qnn;
  models::EvaluatorNet evaluator;
  TrainHistory history;
};

struct GanResult {
  models::GeneratorNet generator;
  models::DiscriminatorNet discriminator;
  models::HybridQnn qnn;
  models::EvaluatorNet evaluator;
  TrainHistory history;
};

struct QsslResult {
  models::QuantumAutoencoder autoencoder;
  models::EvaluatorNet evaluator;
  TrainHistory history;
};

VanillaResult train_vanilla(const data::Dataset& train, const TrainConfig& cfg, const TrainHooks& hooks = {});
GanResult train_qgan1(const data::Dataset& train, const TrainConfig& cfg, const TrainHooks& hooks = {});
GanResult train_qgan2(const data::Dataset& train, const TrainConfig& cfg, const TrainHooks& hooks = {});
QsslResult train_qssl(const data::Dataset& train, const TrainConfig& cfg, const TrainHooks& hooks = {});

/// QNN + evaluator pair with their optimizers; one call to
/// `supervised_step` is one mini-batch of the feedback loop.
struct SupervisedState {
  TrainConfig cfg;
  models::HybridQnn qnn;
  models::EvaluatorNet evaluator;
  nn::AdamState qnn_opt;
  nn::AdamState evaluator_opt;
  xai::Explainer explainer;
  Rng dropout_rng{0};

  /// `cfg` must already have ablations applied; the explainer is fitted on
  /// `explainer_data`.
  static SupervisedState create(const TrainConfig& cfg, const Matrix& explainer_data);
};

struct StepLosses {
  double m1 = 0.0;
  double m1_mse = 0.0;
  double m2 = 0.0;
};

/// One feedback-loop update. `labelled` (1/0 per row, empty = all rows)
/// marks rows whose target is known; unlabelled rows skip the QNN MSE term
/// and the evaluator regresses onto the detached prediction for them.
StepLosses supervised_step(SupervisedState& state, const Matrix& x, const Vector& y, const Vector& labelled,
                           std::uint64_t explain_seed, const TrainHooks& hooks = {});

/// Adversarial pair with optimizers and the latent-noise stream.
struct GanState {
  models::GeneratorNet generator;
  models::DiscriminatorNet discriminator;
  nn::AdamState generator_opt;
  nn::AdamState discriminator_opt;
  Rng latent_rng{0};

  static GanState create(const TrainConfig& cfg, Index row_dim);
};

struct GeneratedBatch {
  Matrix rows;
  nn::ForwardTrace trace;
};

GeneratedBatch generate_batch(GanState& gan, Index rows);
/// BCE step on real (label 1) vs generated (label 0); returns the loss.
double discriminator_update(GanState& gan, const Matrix& real, const Matrix& fake);
/// BCE of the discriminator verdict against label 1 on the generated rows;
/// updates the generator unless `apply` is false. Returns the loss.
double generator_update(GanState& gan, const GeneratedBatch& batch, bool apply = true);

/// Joint rows [features | target], or the features alone.
Matrix gan_rows(const Matrix& x, const Vector& y, bool features_only);

/// Resolves ablations and dimension-dependent fields for data with `dims`
/// columns, then validates.
TrainConfig resolve_config(const TrainConfig& cfg, Index dims);

/// Explanation seed of a given mini-batch.
std::uint64_t batch_explain_seed(std::uint64_t seed, int epoch, std::size_t batch);

}  // namespace qadv::train
