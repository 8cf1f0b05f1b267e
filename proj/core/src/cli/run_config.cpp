#include "qadv/cli/run_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>

#include "qadv/error.hpp"

namespace qadv::cli {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  raise(Errc::Config, "config key '" + path + "': " + why);
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) bad(path.empty() ? key : path + "." + key, "unknown key");
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

template <class T>
void read(const Json& obj, const std::string& path, const char* key, T& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  const auto where = join(path, key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) bad(where, "expected a boolean");
    out = v.get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) bad(where, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned()) {
        out = static_cast<T>(v.get<std::uint64_t>());
      } else {
        if (v.get<std::int64_t>() < 0) bad(where, "expected a non-negative integer");
        out = static_cast<T>(v.get<std::int64_t>());
      }
    } else {
      out = static_cast<T>(v.get<std::int64_t>());
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) bad(where, "expected a number");
    out = v.get<double>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) bad(where, "expected a string");
    out = v.get<std::string>();
  } else {
    if (!v.is_array()) bad(where, "expected an array");
    out.clear();
    for (const auto& e : v) {
      if (!e.is_number()) bad(where, "expected numeric array entries");
      out.push_back(e.get<typename T::value_type>());
    }
  }
}

template <class E, class Parse>
void read_enum(const Json& obj, const std::string& path, const char* key, E& out, Parse parse) {
  std::string text;
  if (!obj.contains(key)) return;
  read(obj, path, key, text);
  out = parse(text);
}

qsim::Entangler parse_entangler(const std::string& text) {
  if (text == "none") return qsim::Entangler::none;
  if (text == "ring_before") return qsim::Entangler::ring_before;
  if (text == "ring_after") return qsim::Entangler::ring_after;
  raise(Errc::Config, "unknown entangler '" + text + "'");
}

std::string entangler_name(qsim::Entangler e) {
  switch (e) {
    case qsim::Entangler::none: return "none";
    case qsim::Entangler::ring_before: return "ring_before";
    case qsim::Entangler::ring_after: return "ring_after";
  }
  return "none";
}

}  // namespace

void merge_config(RunConfig& cfg, const Json& doc) {
  check_keys(doc, "", {"model", "seed", "data", "train", "eval"});
  read_enum(doc, "", "model", cfg.model, [](const std::string& s) { return train::parse_model_kind(s); });
  read(doc, "", "seed", cfg.seed);

  if (doc.contains("data")) {
    const auto& d = doc.at("data");
    check_keys(d, "data",
               {"path", "synthetic_rows", "synthetic_noise", "dedupe", "filter_outliers", "iqr_multiplier",
                "pca_components", "test_fraction", "validation_fraction", "stratify_bins"});
    read(d, "data", "path", cfg.data.path);
    read(d, "data", "synthetic_rows", cfg.data.synthetic_rows);
    read(d, "data", "synthetic_noise", cfg.data.synthetic_noise);
    read(d, "data", "dedupe", cfg.data.preprocess.dedupe);
    read(d, "data", "filter_outliers", cfg.data.preprocess.filter_outliers);
    read(d, "data", "iqr_multiplier", cfg.data.preprocess.iqr_multiplier);
    read(d, "data", "pca_components", cfg.data.pca_components);
    read(d, "data", "test_fraction", cfg.data.test_fraction);
    read(d, "data", "validation_fraction", cfg.data.validation_fraction);
    read(d, "data", "stratify_bins", cfg.data.stratify_bins);
  }

  if (doc.contains("train")) {
    const auto& t = doc.at("train");
    auto& c = cfg.train;
    check_keys(t, "train",
               {"epochs", "gan_epochs", "batch_size", "lr_main", "lr_gan", "alpha", "ablation", "feedback_gradient",
                "synthetic_ratio", "gan_features_only", "latent_dim", "init", "qnn", "qae", "explainer"});
    read(t, "train", "epochs", c.epochs);
    read(t, "train", "gan_epochs", c.gan_epochs);
    read(t, "train", "batch_size", c.batch_size);
    read(t, "train", "lr_main", c.lr_main);
    read(t, "train", "lr_gan", c.lr_gan);
    read(t, "train", "alpha", c.alpha);
    read_enum(t, "train", "ablation", c.ablation, [](const std::string& s) { return train::parse_ablation(s); });
    read_enum(t, "train", "feedback_gradient", c.feedback_gradient,
              [](const std::string& s) { return train::parse_feedback_gradient(s); });
    read(t, "train", "synthetic_ratio", c.synthetic_ratio);
    read(t, "train", "gan_features_only", c.gan_features_only);
    read(t, "train", "latent_dim", c.latent_dim);
    read_enum(t, "train", "init", c.init, [](const std::string& s) { return nn::parse_init_scheme(s); });
    if (t.contains("qnn")) {
      const auto& q = t.at("qnn");
      check_keys(q, "train.qnn", {"hidden", "n_qubits", "entangler", "dropout", "angle_scale"});
      read(q, "train.qnn", "hidden", c.qnn.hidden);
      read(q, "train.qnn", "n_qubits", c.qnn.n_qubits);
      read_enum(q, "train.qnn", "entangler", c.qnn.entangler, parse_entangler);
      read(q, "train.qnn", "dropout", c.qnn.dropout);
      read(q, "train.qnn", "angle_scale", c.qnn.angle_scale);
    }
    if (t.contains("qae")) {
      const auto& q = t.at("qae");
      check_keys(q, "train.qae", {"encoder_hidden", "decoder_hidden", "n_qubits", "entangler", "angle_scale"});
      read(q, "train.qae", "encoder_hidden", c.qae.encoder_hidden);
      read(q, "train.qae", "decoder_hidden", c.qae.decoder_hidden);
      read(q, "train.qae", "n_qubits", c.qae.n_qubits);
      read_enum(q, "train.qae", "entangler", c.qae.entangler, parse_entangler);
      read(q, "train.qae", "angle_scale", c.qae.angle_scale);
    }
    if (t.contains("explainer")) {
      const auto& e = t.at("explainer");
      check_keys(e, "train.explainer", {"n_samples", "kernel_width", "ridge"});
      read(e, "train.explainer", "n_samples", c.explainer.n_samples);
      if (e.contains("kernel_width")) {
        if (e.at("kernel_width").is_null()) {
          c.explainer.kernel_width.reset();
        } else {
          double w = 0.0;
          read(e, "train.explainer", "kernel_width", w);
          c.explainer.kernel_width = w;
        }
      }
      read(e, "train.explainer", "ridge", c.explainer.ridge);
    }
  }

  if (doc.contains("eval")) {
    const auto& e = doc.at("eval");
    check_keys(e, "eval",
               {"calibration_bins", "noise_magnitude", "importance_repeats", "conformal_levels", "cv_folds",
                "latency_batch", "latency_runs"});
    read(e, "eval", "calibration_bins", cfg.eval.calibration_bins);
    read(e, "eval", "noise_magnitude", cfg.eval.noise_magnitude);
    read(e, "eval", "importance_repeats", cfg.eval.importance_repeats);
    read(e, "eval", "conformal_levels", cfg.eval.conformal_levels);
    read(e, "eval", "cv_folds", cfg.eval.cv_folds);
    read(e, "eval", "latency_batch", cfg.eval.latency_batch);
    read(e, "eval", "latency_runs", cfg.eval.latency_runs);
  }
}

void RunConfig::validate() const {
  if (data.synthetic_rows < 2) raise(Errc::Config, "data.synthetic_rows must be >= 2");
  if (!(data.synthetic_noise >= 0.0)) raise(Errc::Config, "data.synthetic_noise must be >= 0");
  if (!(data.preprocess.iqr_multiplier > 0.0)) raise(Errc::Config, "data.iqr_multiplier must be positive");
  if (data.pca_components < 0) raise(Errc::Config, "data.pca_components must be >= 0");
  if (!(data.test_fraction > 0.0 && data.test_fraction < 1.0)) raise(Errc::Config, "data.test_fraction must lie in (0,1)");
  if (!(data.validation_fraction >= 0.0 && data.test_fraction + data.validation_fraction < 1.0))
    raise(Errc::Config, "data.validation_fraction must be >= 0 and leave training rows");
  if (data.stratify_bins < 1) raise(Errc::Config, "data.stratify_bins must be >= 1");
  if (eval.calibration_bins < 1) raise(Errc::Config, "eval.calibration_bins must be >= 1");
  if (!(eval.noise_magnitude > 0.0 && eval.noise_magnitude <= 1.0))
    raise(Errc::Config, "eval.noise_magnitude must lie in (0,1]");
  if (eval.importance_repeats < 1) raise(Errc::Config, "eval.importance_repeats must be >= 1");
  for (double l : eval.conformal_levels)
    if (!(l > 0.0 && l < 1.0)) raise(Errc::Config, "eval.conformal_levels entries must lie in (0,1)");
  if (eval.cv_folds < 2) raise(Errc::Config, "eval.cv_folds must be >= 2");
  if (eval.latency_batch < 1 || eval.latency_runs < 1) raise(Errc::Config, "latency batch and runs must be >= 1");
  train.validate();
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) raise(Errc::Config, "cannot open config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::Config, "config file " + path.string() + " is not valid JSON: " + e.what());
  }
  RunConfig cfg;
  merge_config(cfg, doc);
  return cfg;
}

Json to_json(const RunConfig& cfg) {
  const auto& t = cfg.train;
  Json kernel = t.explainer.kernel_width ? Json(*t.explainer.kernel_width) : Json(nullptr);
  return Json{
      {"model", std::string(train::to_string(cfg.model))},
      {"seed", cfg.seed},
      {"data",
       {{"path", cfg.data.path},
        {"synthetic_rows", cfg.data.synthetic_rows},
        {"synthetic_noise", cfg.data.synthetic_noise},
        {"dedupe", cfg.data.preprocess.dedupe},
        {"filter_outliers", cfg.data.preprocess.filter_outliers},
        {"iqr_multiplier", cfg.data.preprocess.iqr_multiplier},
        {"pca_components", cfg.data.pca_components},
        {"test_fraction", cfg.data.test_fraction},
        {"validation_fraction", cfg.data.validation_fraction},
        {"stratify_bins", cfg.data.stratify_bins}}},
      {"train",
       {{"epochs", t.epochs},
        {"gan_epochs", t.gan_epochs},
        {"batch_size", t.batch_size},
        {"lr_main", t.lr_main},
        {"lr_gan", t.lr_gan},
        {"alpha", t.alpha},
        {"ablation", std::string(train::to_string(t.ablation))},
        {"feedback_gradient", std::string(train::to_string(t.feedback_gradient))},
        {"synthetic_ratio", t.synthetic_ratio},
        {"gan_features_only", t.gan_features_only},
        {"latent_dim", t.latent_dim},
        {"init", std::string(nn::to_string(t.init))},
        {"qnn",
         {{"hidden", t.qnn.hidden},
          {"n_qubits", t.qnn.n_qubits},
          {"entangler", entangler_name(t.qnn.entangler)},
          {"dropout", t.qnn.dropout},
          {"angle_scale", t.qnn.angle_scale}}},
        {"qae",
         {{"encoder_hidden", t.qae.encoder_hidden},
          {"decoder_hidden", t.qae.decoder_hidden},
          {"n_qubits", t.qae.n_qubits},
          {"entangler", entangler_name(t.qae.entangler)},
          {"angle_scale", t.qae.angle_scale}}},
        {"explainer", {{"n_samples", t.explainer.n_samples}, {"kernel_width", kernel}, {"ridge", t.explainer.ridge}}}}},
      {"eval",
       {{"calibration_bins", cfg.eval.calibration_bins},
        {"noise_magnitude", cfg.eval.noise_magnitude},
        {"importance_repeats", cfg.eval.importance_repeats},
        {"conformal_levels", cfg.eval.conformal_levels},
        {"cv_folds", cfg.eval.cv_folds},
        {"latency_batch", cfg.eval.latency_batch},
        {"latency_runs", cfg.eval.latency_runs}}}};
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("QADV_SEED");
  if (!raw || !*raw) return std::nullopt;
  const std::string_view text(raw);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    raise(Errc::Config, "QADV_SEED must be a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

}  // namespace qadv::cli
