#pragma once

#include "qadv/data/frame.hpp"

namespace qadv::data {

/// Principal axes of a centred design matrix. `components` rows are
/// orthonormal and ordered by decreasing explained variance.
struct PcaBasis {
  Vector mean;
  Matrix components;  // k x d
  Vector explained_variance_ratio;

  [[nodiscard]] Index input_dims() const noexcept { return components.cols(); }
  [[nodiscard]] Index output_dims() const noexcept { return components.rows(); }
};

PcaBasis fit_pca(const Matrix& x, Index k);

/// (x - mean) * components^T, N x k.
Matrix project(const PcaBasis& basis, const Matrix& x);
FeatureMatrix project(const PcaBasis& basis, const FeatureMatrix& x);

/// Inverse map y * components + mean; exact when k == d.
Matrix reconstruct(const PcaBasis& basis, const Matrix& projected);

}  // namespace qadv::data
