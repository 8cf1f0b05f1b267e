#include "qadv/train/config.hpp"

#include <string>

#include "qadv/error.hpp"

namespace qadv::train {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::vanilla: return "vanilla";
    case ModelKind::qgan1: return "qgan1";
    case ModelKind::qgan2: return "qgan2";
    case ModelKind::qssl: return "qssl";
  }
  return "vanilla";
}

std::string_view to_string(Ablation ablation) noexcept {
  switch (ablation) {
    case Ablation::none: return "none";
    case Ablation::no_feedback: return "no_feedback";
    case Ablation::no_quantum: return "no_quantum";
    case Ablation::no_classical: return "no_classical";
  }
  return "none";
}

std::string_view to_string(FeedbackGradient mode) noexcept {
  return mode == FeedbackGradient::scalar_only ? "scalar_only" : "through_prediction";
}

ModelKind parse_model_kind(std::string_view text) {
  for (auto k : {ModelKind::vanilla, ModelKind::qgan1, ModelKind::qgan2, ModelKind::qssl})
    if (to_string(k) == text) return k;
  raise(Errc::Config, "unknown model kind '" + std::string(text) + "'");
}

Ablation parse_ablation(std::string_view text) {
  for (auto a : {Ablation::none, Ablation::no_feedback, Ablation::no_quantum, Ablation::no_classical})
    if (to_string(a) == text) return a;
  raise(Errc::Config, "unknown ablation '" + std::string(text) + "'");
}

FeedbackGradient parse_feedback_gradient(std::string_view text) {
  for (auto f : {FeedbackGradient::through_prediction, FeedbackGradient::scalar_only})
    if (to_string(f) == text) return f;
  raise(Errc::Config, "unknown feedback_gradient '" + std::string(text) + "'");
}

void TrainConfig::validate() const {
  if (epochs < 1) raise(Errc::Config, "epochs must be >= 1");
  if (gan_epochs < 0) raise(Errc::Config, "gan_epochs must be >= 0");
  if (batch_size < 1) raise(Errc::Config, "batch_size must be >= 1");
  if (!(lr_main > 0.0) || !(lr_gan > 0.0)) raise(Errc::Config, "learning rates must be positive");
  if (!(alpha >= 0.0)) raise(Errc::Config, "alpha must be >= 0");
  if (!(synthetic_ratio >= 0.0)) raise(Errc::Config, "synthetic_ratio must be >= 0");
  if (latent_dim < 1) raise(Errc::Config, "latent_dim must be >= 1");
  if (explainer.n_samples < 2) raise(Errc::Config, "explainer n_samples must be >= 2");
}

TrainConfig apply_ablation(const TrainConfig& cfg) {
  TrainConfig out = cfg;
  switch (cfg.ablation) {
    case Ablation::none: break;
    case Ablation::no_feedback: out.alpha = 0.0; break;
    case Ablation::no_quantum: out.qnn.quantum = false; break;
    case Ablation::no_classical: out.qnn.classical_trunk = false; break;
  }
  return out;
}

}  // namespace qadv::train
