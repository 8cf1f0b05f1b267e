#pragma once

#include <string>
#include <vector>

#include "qadv/types.hpp"

namespace qadv::data {

/// Preprocessed design matrix, N x d.
struct FeatureMatrix {
  Matrix values;
  std::vector<std::string> column_names;

  [[nodiscard]] Index rows() const noexcept { return values.rows(); }
  [[nodiscard]] Index cols() const noexcept { return values.cols(); }
};

/// Scaled regression target plus the parameters needed to undo the scaling.
struct TargetVector {
  Vector values;
  double raw_min = 0.0;
  double raw_max = 1.0;

  [[nodiscard]] Index size() const noexcept { return values.size(); }
  [[nodiscard]] double unscale(double scaled) const noexcept { return raw_min + scaled * (raw_max - raw_min); }
};

struct Dataset {
  FeatureMatrix features;
  TargetVector target;
};

/// Gathers the listed rows of `ds` into a new dataset (order preserved).
Dataset select_rows(const Dataset& ds, const std::vector<Index>& rows);
Matrix select_rows(const Matrix& m, const std::vector<Index>& rows);
Vector select_rows(const Vector& v, const std::vector<Index>& rows);

}  // namespace qadv::data
