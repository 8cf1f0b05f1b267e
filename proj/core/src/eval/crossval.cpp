#include "qadv/eval/crossval.hpp"

#include <string>

#include "qadv/data/split.hpp"
#include "qadv/error.hpp"
#include "qadv/train/bundle.hpp"

namespace qadv::eval {

namespace {

constexpr std::uint64_t kStreamFolds = 0xcf01;
constexpr std::uint64_t kStreamFoldSeed = 0xcf02;

std::vector<Index> complement(Index n, const std::vector<Index>& held_out) {
  std::vector<bool> skip(static_cast<std::size_t>(n), false);
  for (Index i : held_out) skip[static_cast<std::size_t>(i)] = true;
  std::vector<Index> out;
  for (Index i = 0; i < n; ++i)
    if (!skip[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

}  // namespace

double metric_value(const RegressionMetrics& m, const std::string& name) {
  if (name == "mse") return m.mse;
  if (name == "rmse") return m.rmse;
  if (name == "mae") return m.mae;
  if (name == "r2") return m.r2;
  if (name == "pct_rmse") return m.pct_rmse;
  if (name == "pct_mse") return m.pct_mse;
  if (name == "pct_mae") return m.pct_mae;
  raise(Errc::InvalidArgument, "unknown metric '" + name + "'");
}

CvReport cross_validate(train::ModelKind model, const data::Dataset& data, int k, const train::TrainConfig& cfg,
                        train::ModelKind baseline) {
  if (k < 2) raise(Errc::InvalidArgument, "cross-validation needs k >= 2");
  const Index n = data.features.rows();
  const Vector& y = data.target.values;
  const double y_range = y.maxCoeff() - y.minCoeff();
  CvReport rep;
  rep.model = model;
  rep.baseline = baseline;
  rep.folds = data::kfold(n, k, y, derive_seed(cfg.seed, kStreamFolds)).folds;

  for (std::size_t f = 0; f < rep.folds.size(); ++f) {
    const auto train_set = data::select_rows(data, complement(n, rep.folds[f]));
    const auto test_set = data::select_rows(data, rep.folds[f]);
    train::TrainConfig fold_cfg = cfg;
    fold_cfg.seed = derive_seed(cfg.seed, kStreamFoldSeed, f);
    try {
      const auto m = train::train_model(model, train_set, fold_cfg);
      const Vector pm = m.models.predict(test_set.features.values);
      rep.model_folds.push_back(regression_metrics(test_set.target.values, pm, y_range));
      if (baseline == model) {
        rep.baseline_folds.push_back(rep.model_folds.back());
      } else {
        const auto b = train::train_model(baseline, train_set, fold_cfg);
        const Vector pb = b.models.predict(test_set.features.values);
        rep.baseline_folds.push_back(regression_metrics(test_set.target.values, pb, y_range));
      }
    } catch (const Error& e) {
      raise(e.code(), "fold " + std::to_string(f) + ": " + e.what());
    }
  }

  const auto kk = static_cast<Index>(rep.folds.size());
  for (const auto& name : kMetricNames) {
    Vector a(kk), b(kk);
    for (Index f = 0; f < kk; ++f) {
      a(f) = metric_value(rep.model_folds[static_cast<std::size_t>(f)], name);
      b(f) = metric_value(rep.baseline_folds[static_cast<std::size_t>(f)], name);
    }
    rep.model_summary[name] = mean_ci(a);
    rep.baseline_summary[name] = mean_ci(b);
    rep.tests[name] = {paired_t_test(a, b), wilcoxon_signed_rank(a, b)};
  }
  return rep;
}

}  // namespace qadv::eval
