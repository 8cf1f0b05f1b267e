#include "qadv/cli/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "qadv/error.hpp"
#include "qadv/io/base64.hpp"

namespace qadv::cli {

namespace {

std::string activation_name(nn::Activation a) {
  switch (a) {
    case nn::Activation::relu: return "relu";
    case nn::Activation::sigmoid: return "sigmoid";
    case nn::Activation::identity: return "identity";
  }
  return "identity";
}

nn::Activation parse_activation(const std::string& s) {
  if (s == "relu") return nn::Activation::relu;
  if (s == "sigmoid") return nn::Activation::sigmoid;
  if (s == "identity") return nn::Activation::identity;
  raise(Errc::Io, "checkpoint names unknown activation '" + s + "'");
}

std::string entangler_name(qsim::Entangler e) {
  switch (e) {
    case qsim::Entangler::none: return "none";
    case qsim::Entangler::ring_before: return "ring_before";
    case qsim::Entangler::ring_after: return "ring_after";
  }
  return "none";
}

qsim::Entangler parse_entangler(const std::string& s) {
  if (s == "none") return qsim::Entangler::none;
  if (s == "ring_before") return qsim::Entangler::ring_before;
  if (s == "ring_after") return qsim::Entangler::ring_after;
  raise(Errc::Io, "checkpoint names unknown entangler '" + s + "'");
}

// Row-major array with an explicit shape.
Json array_to_json(const Matrix& m) {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
  return Json{{"shape", {m.rows(), m.cols()}}, {"data", io::encode_f64(flat)}};
}

Json vector_to_json(const Vector& v) {
  std::vector<double> flat(v.data(), v.data() + v.size());
  return Json{{"shape", {v.size()}}, {"data", io::encode_f64(flat)}};
}

Matrix array_from_json(const Json& doc) {
  const auto shape = doc.at("shape").get<std::vector<Index>>();
  if (shape.size() != 2) raise(Errc::Io, "expected a 2-D array");
  const auto flat = io::decode_f64(doc.at("data").get<std::string>());
  if (static_cast<Index>(flat.size()) != shape[0] * shape[1]) raise(Errc::Io, "array payload does not match its shape");
  Matrix m(shape[0], shape[1]);
  for (Index i = 0; i < shape[0]; ++i)
    for (Index j = 0; j < shape[1]; ++j) m(i, j) = flat[static_cast<std::size_t>(i * shape[1] + j)];
  return m;
}

Vector vector_from_json(const Json& doc) {
  const auto shape = doc.at("shape").get<std::vector<Index>>();
  if (shape.size() != 1) raise(Errc::Io, "expected a 1-D array");
  const auto flat = io::decode_f64(doc.at("data").get<std::string>());
  if (static_cast<Index>(flat.size()) != shape[0]) raise(Errc::Io, "array payload does not match its shape");
  return Eigen::Map<const Vector>(flat.data(), static_cast<Index>(flat.size()));
}

Json qnn_config_json(const models::QnnConfig& c) {
  return Json{{"input_dim", c.input_dim},   {"hidden", c.hidden},       {"n_qubits", c.n_qubits},
              {"entangler", entangler_name(c.entangler)}, {"dropout", c.dropout}, {"angle_scale", c.angle_scale},
              {"quantum", c.quantum},       {"classical_trunk", c.classical_trunk}};
}

models::QnnConfig qnn_config_from(const Json& j) {
  models::QnnConfig c;
  c.input_dim = j.at("input_dim").get<Index>();
  c.hidden = j.at("hidden").get<std::vector<Index>>();
  c.n_qubits = j.at("n_qubits").get<int>();
  c.entangler = parse_entangler(j.at("entangler").get<std::string>());
  c.dropout = j.at("dropout").get<double>();
  c.angle_scale = j.at("angle_scale").get<double>();
  c.quantum = j.at("quantum").get<bool>();
  c.classical_trunk = j.at("classical_trunk").get<bool>();
  return c;
}

Json qae_config_json(const models::QaeConfig& c) {
  return Json{{"input_dim", c.input_dim},
              {"encoder_hidden", c.encoder_hidden},
              {"decoder_hidden", c.decoder_hidden},
              {"n_qubits", c.n_qubits},
              {"entangler", entangler_name(c.entangler)},
              {"angle_scale", c.angle_scale}};
}

models::QaeConfig qae_config_from(const Json& j) {
  models::QaeConfig c;
  c.input_dim = j.at("input_dim").get<Index>();
  c.encoder_hidden = j.at("encoder_hidden").get<std::vector<Index>>();
  c.decoder_hidden = j.at("decoder_hidden").get<std::vector<Index>>();
  c.n_qubits = j.at("n_qubits").get<int>();
  c.entangler = parse_entangler(j.at("entangler").get<std::string>());
  c.angle_scale = j.at("angle_scale").get<double>();
  return c;
}

void check_version(const Json& doc) {
  if (!doc.contains("format_version") || !doc.at("format_version").is_string())
    raise(Errc::Io, "checkpoint has no format_version");
  const auto v = doc.at("format_version").get<std::string>();
  const auto dot = v.find('.');
  int major = -1;
  try {
    major = std::stoi(v.substr(0, dot));
  } catch (const std::exception&) {
    raise(Errc::Io, "unparseable checkpoint format_version '" + v + "'");
  }
  if (major != kCheckpointMajor)
    raise(Errc::VersionMismatch, "checkpoint format " + v + " is not readable by this build (expects " +
                                     kCheckpointVersion + ")");
}

}  // namespace

Json mlp_to_json(const nn::Mlp& mlp) {
  const auto& s = mlp.spec();
  Json acts = Json::array();
  for (auto a : s.activations) acts.push_back(activation_name(a));
  return Json{{"layer_dims", s.layer_dims},
              {"activations", acts},
              {"dropout_after", s.dropout_after},
              {"dropout_rate", s.dropout_rate},
              {"parameter_count", mlp.parameter_count()},
              {"parameters", io::encode_f64(mlp.parameters())}};
}

nn::Mlp mlp_from_json(const Json& doc) {
  nn::MlpSpec spec;
  spec.layer_dims = doc.at("layer_dims").get<std::vector<Index>>();
  for (const auto& a : doc.at("activations")) spec.activations.push_back(parse_activation(a.get<std::string>()));
  spec.dropout_after = doc.at("dropout_after").get<std::vector<std::size_t>>();
  spec.dropout_rate = doc.at("dropout_rate").get<double>();
  if (spec.layer_dims.empty()) return nn::Mlp();
  auto mlp = nn::Mlp::zeros(spec);
  const auto params = io::decode_f64(doc.at("parameters").get<std::string>());
  if (static_cast<Index>(params.size()) != mlp.parameter_count())
    raise(Errc::Io, "stored parameter count does not match the layer layout");
  mlp.set_parameters(params);
  return mlp;
}

Json checkpoint_to_json(const Checkpoint& ckpt) {
  const auto& m = ckpt.models;
  Json arch = Json::object();
  Json nets = Json::object();
  Json arrays = Json::object();
  if (m.qnn) {
    arch["qnn"] = qnn_config_json(m.qnn->config);
    nets["qnn.trunk"] = m.qnn->config.classical_trunk ? mlp_to_json(m.qnn->trunk) : Json(nullptr);
  }
  if (m.evaluator) {
    arch["evaluator"] = {{"feature_dim", m.evaluator->feature_dim},
                         {"middle_dim", m.evaluator->middle_dim},
                         {"explanation_dim", m.evaluator->explanation_dim}};
    nets["evaluator"] = mlp_to_json(m.evaluator->net);
  }
  if (m.generator) {
    arch["generator"] = {{"latent_dim", m.generator->latent_dim}};
    nets["generator"] = mlp_to_json(m.generator->net);
  }
  if (m.discriminator) nets["discriminator"] = mlp_to_json(m.discriminator->net);
  if (m.autoencoder) {
    arch["autoencoder"] = qae_config_json(m.autoencoder->config);
    nets["autoencoder.encoder"] = mlp_to_json(m.autoencoder->encoder);
    nets["autoencoder.decoder"] = mlp_to_json(m.autoencoder->decoder);
    arrays["autoencoder.readout"] = vector_to_json(m.autoencoder->readout);
  }
  arrays["scaler.min"] = vector_to_json(ckpt.scaler.per_column_min);
  arrays["scaler.max"] = vector_to_json(ckpt.scaler.per_column_max);
  Vector target_range(2);
  target_range << ckpt.target_raw_min, ckpt.target_raw_max;
  arrays["target.range"] = vector_to_json(target_range);
  if (ckpt.pca) {
    arrays["pca.mean"] = vector_to_json(ckpt.pca->mean);
    arrays["pca.components"] = array_to_json(ckpt.pca->components);
    arrays["pca.explained_variance_ratio"] = vector_to_json(ckpt.pca->explained_variance_ratio);
  }
  return Json{{"format_version", kCheckpointVersion},
              {"model_kind", std::string(train::to_string(m.kind))},
              {"seed", ckpt.config.seed},
              {"config", to_json(ckpt.config)},
              {"feature_names", ckpt.feature_names},
              {"architecture", arch},
              {"networks", nets},
              {"arrays", arrays}};
}

Checkpoint checkpoint_from_json(const Json& doc) {
  if (!doc.is_object()) raise(Errc::Io, "checkpoint is not a JSON object");
  check_version(doc);
  try {
    Checkpoint c;
    merge_config(c.config, doc.at("config"));
    c.models.kind = train::parse_model_kind(doc.at("model_kind").get<std::string>());
    c.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    const auto& arch = doc.at("architecture");
    const auto& nets = doc.at("networks");
    const auto& arrays = doc.at("arrays");
    if (arch.contains("qnn")) {
      models::HybridQnn q;
      q.config = qnn_config_from(arch.at("qnn"));
      q.circuit = {q.config.n_qubits, q.config.entangler};
      if (q.config.classical_trunk) q.trunk = mlp_from_json(nets.at("qnn.trunk"));
      c.models.qnn = std::move(q);
    }
    if (arch.contains("evaluator")) {
      models::EvaluatorNet e;
      const auto& a = arch.at("evaluator");
      e.feature_dim = a.at("feature_dim").get<Index>();
      e.middle_dim = a.at("middle_dim").get<Index>();
      e.explanation_dim = a.at("explanation_dim").get<Index>();
      e.net = mlp_from_json(nets.at("evaluator"));
      c.models.evaluator = std::move(e);
    }
    if (arch.contains("generator")) {
      models::GeneratorNet g;
      g.latent_dim = arch.at("generator").at("latent_dim").get<Index>();
      g.net = mlp_from_json(nets.at("generator"));
      c.models.generator = std::move(g);
    }
    if (nets.contains("discriminator")) c.models.discriminator = models::DiscriminatorNet{mlp_from_json(nets.at("discriminator"))};
    if (arch.contains("autoencoder")) {
      models::QuantumAutoencoder ae;
      ae.config = qae_config_from(arch.at("autoencoder"));
      ae.bottleneck = {ae.config.n_qubits, ae.config.entangler};
      ae.encoder = mlp_from_json(nets.at("autoencoder.encoder"));
      ae.decoder = mlp_from_json(nets.at("autoencoder.decoder"));
      ae.readout = vector_from_json(arrays.at("autoencoder.readout"));
      c.models.autoencoder = std::move(ae);
    }
    c.scaler.per_column_min = vector_from_json(arrays.at("scaler.min"));
    c.scaler.per_column_max = vector_from_json(arrays.at("scaler.max"));
    const Vector range = vector_from_json(arrays.at("target.range"));
    if (range.size() != 2) raise(Errc::Io, "target.range must hold two values");
    c.target_raw_min = range(0);
    c.target_raw_max = range(1);
    if (arrays.contains("pca.mean")) {
      data::PcaBasis p;
      p.mean = vector_from_json(arrays.at("pca.mean"));
      p.components = array_from_json(arrays.at("pca.components"));
      p.explained_variance_ratio = vector_from_json(arrays.at("pca.explained_variance_ratio"));
      c.pca = std::move(p);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::Io, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(Errc::Io, "cannot open " + path.string() + " for writing");
  f << checkpoint_to_json(ckpt).dump(2) << '\n';
  if (!f) raise(Errc::Io, "write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(Errc::Io, "cannot open checkpoint " + path.string());
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::Io, "checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  return checkpoint_from_json(doc);
}

}  // namespace qadv::cli
