#include "qadv/train/bundle.hpp"

#include "qadv/error.hpp"

namespace qadv::train {

Vector ModelBundle::predict(const Matrix& x) const {
  if (kind == ModelKind::qssl) {
    if (!autoencoder) raise(Errc::InvalidArgument, "bundle has no autoencoder");
    return models::qae_predict(*autoencoder, x);
  }
  if (!qnn) raise(Errc::InvalidArgument, "bundle has no QNN");
  return models::qnn_predict(*qnn, x);
}

Index ModelBundle::input_dim() const {
  if (kind == ModelKind::qssl) return autoencoder ? autoencoder->config.input_dim : 0;
  return qnn ? qnn->config.input_dim : 0;
}

TrainOutcome train_model(ModelKind kind, const data::Dataset& train, const TrainConfig& cfg, const TrainHooks& hooks) {
  TrainOutcome out;
  out.models.kind = kind;
  switch (kind) {
    case ModelKind::vanilla: {
      auto r = train_vanilla(train, cfg, hooks);
      out.models.qnn = std::move(r.qnn);
      out.models.evaluator = std::move(r.evaluator);
      out.history = std::move(r.history);
      break;
    }
    case ModelKind::qgan1:
    case ModelKind::qgan2: {
      auto r = kind == ModelKind::qgan1 ? train_qgan1(train, cfg, hooks) : train_qgan2(train, cfg, hooks);
      out.models.qnn = std::move(r.qnn);
      out.models.evaluator = std::move(r.evaluator);
      out.models.generator = std::move(r.generator);
      out.models.discriminator = std::move(r.discriminator);
      out.history = std::move(r.history);
      break;
    }
    case ModelKind::qssl: {
      auto r = train_qssl(train, cfg, hooks);
      out.models.autoencoder = std::move(r.autoencoder);
      out.models.evaluator = std::move(r.evaluator);
      out.history = std::move(r.history);
      break;
    }
  }
  return out;
}

}  // namespace qadv::train
