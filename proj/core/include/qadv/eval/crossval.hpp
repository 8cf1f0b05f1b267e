#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qadv/data/frame.hpp"
#include "qadv/eval/metrics.hpp"
#include "qadv/eval/stats.hpp"
#include "qadv/train/config.hpp"

namespace qadv::eval {

inline const std::vector<std::string> kMetricNames = {"mse", "rmse", "mae", "r2", "pct_rmse", "pct_mse", "pct_mae"};

double metric_value(const RegressionMetrics& m, const std::string& name);

struct PairedComparison {
  TestResult t_test;
  TestResult wilcoxon;
};

struct CvReport {
  train::ModelKind model = train::ModelKind::vanilla;
  train::ModelKind baseline = train::ModelKind::vanilla;
  std::vector<std::vector<Index>> folds;
  std::vector<RegressionMetrics> model_folds;
  std::vector<RegressionMetrics> baseline_folds;
  std::map<std::string, ConfidenceInterval> model_summary;
  std::map<std::string, ConfidenceInterval> baseline_summary;
  std::map<std::string, PairedComparison> tests;
};

/// k-fold cross-validation of `model` against `baseline`; both see the same
/// folds and the same per-fold seed. y_range is the target range of `data`.
CvReport cross_validate(train::ModelKind model, const data::Dataset& data, int k, const train::TrainConfig& cfg,
                        train::ModelKind baseline);

}  // namespace qadv::eval
