#include "qadv/cli/pipeline.hpp"

#include "qadv/data/catalog.hpp"
#include "qadv/data/synthetic.hpp"
#include "qadv/error.hpp"
#include "qadv/rng.hpp"

namespace qadv::cli {

namespace {

constexpr std::uint64_t kStreamSynthetic = 0xda7a;
constexpr std::uint64_t kStreamSplit = 0x5917;

}  // namespace

double PreparedData::target_range() const {
  const Vector& y = all.target.values;
  const double r = y.size() ? y.maxCoeff() - y.minCoeff() : 0.0;
  return r > 0.0 ? r : 1.0;
}

PreparedData prepare_data(const RunConfig& cfg) {
  PreparedData out;
  if (cfg.data.synthetic()) {
    data::SyntheticSpec spec;
    spec.rows = cfg.data.synthetic_rows;
    spec.noise_sigma = cfg.data.synthetic_noise;
    out.all = data::gen_synthetic(spec, derive_seed(cfg.seed, kStreamSynthetic));
    out.scaler = data::MinMaxScaler::identity(out.all.features.cols());
  } else {
    auto raw = data::load_catalog(cfg.data.path);
    auto pre = data::preprocess(raw, cfg.data.preprocess);
    out.all = {std::move(pre.features), std::move(pre.target)};
    out.scaler = std::move(pre.scaler);
    out.preprocess = pre.report;
  }

  out.split = data::split_stratified(out.all.target.values, cfg.data.test_fraction, cfg.data.stratify_bins,
                                     derive_seed(cfg.seed, kStreamSplit), cfg.data.validation_fraction);

  if (cfg.data.pca_components > 0) {
    if (cfg.data.pca_components > out.all.features.cols())
      raise(Errc::Config, "data.pca_components exceeds the feature count");
    const Matrix train_x = data::select_rows(out.all.features.values, out.split.train);
    out.pca = data::fit_pca(train_x, cfg.data.pca_components);
    out.all.features = data::project(*out.pca, out.all.features);
  }

  out.train = data::select_rows(out.all, out.split.train);
  out.test = data::select_rows(out.all, out.split.test);
  out.validation = data::select_rows(out.all, out.split.validation);
  return out;
}

train::TrainConfig effective_train_config(const RunConfig& cfg) {
  train::TrainConfig t = cfg.train;
  t.seed = cfg.seed;
  return t;
}

}  // namespace qadv::cli
