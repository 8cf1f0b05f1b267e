#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qadv/models/autoencoder.hpp"
#include "qadv/models/hybrid_qnn.hpp"
#include "qadv/xai/explainer.hpp"

namespace qadv::train {

enum class ModelKind { vanilla, qgan1, qgan2, qssl };
enum class Ablation { none, no_feedback, no_quantum, no_classical };
/// How the evaluator loss reaches the QNN: through the prediction column of
/// the evaluator input, or only as an additive constant.
enum class FeedbackGradient { through_prediction, scalar_only };

std::string_view to_string(ModelKind kind) noexcept;
std::string_view to_string(Ablation ablation) noexcept;
std::string_view to_string(FeedbackGradient mode) noexcept;
ModelKind parse_model_kind(std::string_view text);
Ablation parse_ablation(std::string_view text);
FeedbackGradient parse_feedback_gradient(std::string_view text);

struct TrainConfig {
  int epochs = 10;
  int gan_epochs = 100;
  Index batch_size = 32;
  double lr_main = 1e-3;
  double lr_gan = 2e-4;
  double alpha = 0.5;
  std::uint64_t seed = 0;
  Ablation ablation = Ablation::none;
  FeedbackGradient feedback_gradient = FeedbackGradient::through_prediction;
  /// Fraction of the real training size generated for Q-GAN-1 augmentation,
  /// and the per-batch synthetic share for Q-GAN-2.
  double synthetic_ratio = 0.5;
  /// Generate 8-dim feature rows without a target column; synthetic rows
  /// then only enter the evaluator-feedback term.
  bool gan_features_only = false;
  Index latent_dim = 16;
  /// Applied to every network in the run.
  nn::InitScheme init = nn::InitScheme::fan_in_uniform;
  models::QnnConfig qnn;
  models::QaeConfig qae;
  xai::ExplainerConfig explainer;

  /// Throws Errc::Config on any out-of-range field.
  void validate() const;
};

/// Rewrites the config so that the requested ablation is wired in:
/// no_feedback sets alpha = 0, no_quantum swaps the circuit for a sigmoid of
/// the mean angle, no_classical feeds features straight in as angles.
TrainConfig apply_ablation(const TrainConfig& cfg);

}  // namespace qadv::train
