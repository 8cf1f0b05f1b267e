#pragma once

#include <optional>

#include "qadv/data/frame.hpp"
#include "qadv/models/autoencoder.hpp"
#include "qadv/models/evaluator.hpp"
#include "qadv/models/gan.hpp"
#include "qadv/models/hybrid_qnn.hpp"
#include "qadv/train/config.hpp"
#include "qadv/train/history.hpp"
#include "qadv/train/trainers.hpp"

namespace qadv::train {

/// Whatever a training procedure produced, behind one predict() surface.
struct ModelBundle {
  ModelKind kind = ModelKind::vanilla;
  std::optional<models::HybridQnn> qnn;
  std::optional<models::EvaluatorNet> evaluator;
  std::optional<models::GeneratorNet> generator;
  std::optional<models::DiscriminatorNet> discriminator;
  std::optional<models::QuantumAutoencoder> autoencoder;

  /// Scaled-space target prediction (eval mode).
  [[nodiscard]] Vector predict(const Matrix& x) const;
  [[nodiscard]] Index input_dim() const;
};

struct TrainOutcome {
  ModelBundle models;
  TrainHistory history;
};

TrainOutcome train_model(ModelKind kind, const data::Dataset& train, const TrainConfig& cfg,
                         const TrainHooks& hooks = {});

}  // namespace qadv::train
