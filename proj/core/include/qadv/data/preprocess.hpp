#pragma once

#include <cstddef>

#include "qadv/data/catalog.hpp"
#include "qadv/data/frame.hpp"

namespace qadv::data {

/// Per-column min-max scaling onto [0, 1]. Constant columns map to 0.
struct MinMaxScaler {
  Vector per_column_min;
  Vector per_column_max;

  static MinMaxScaler fit(const Matrix& x);
  /// Scaler that leaves data in [0,1] unchanged (min 0, max 1 per column).
  static MinMaxScaler identity(Index dims);

  [[nodiscard]] Matrix transform(const Matrix& x) const;
  [[nodiscard]] Matrix inverse(const Matrix& scaled) const;
  [[nodiscard]] Index dims() const noexcept { return per_column_min.size(); }
};

struct PreprocessConfig {
  bool dedupe = true;
  bool filter_outliers = true;
  double iqr_multiplier = 1.5;
};

struct PreprocessReport {
  std::size_t input_rows = 0;
  std::size_t imputed_cells = 0;
  std::size_t rows_with_imputation = 0;
  std::size_t duplicates_removed = 0;
  std::size_t outliers_removed = 0;
  std::size_t output_rows = 0;
  std::size_t morph_e = 0;
  std::size_t morph_s = 0;
};

struct PreprocessResult {
  FeatureMatrix features;
  TargetVector target;
  MinMaxScaler scaler;
  PreprocessReport report;
};

/// Impute zeros, drop exact duplicates, drop IQR outliers, min-max scale.
PreprocessResult preprocess(const RawCatalog& catalog, const PreprocessConfig& cfg = {});

/// Linear-interpolated sample quantile (q in [0,1]) of unsorted values.
double quantile(std::vector<double> values, double q);

}  // namespace qadv::data
