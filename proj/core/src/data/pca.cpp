#include "qadv/data/pca.hpp"

#include <Eigen/Eigenvalues>

#include "qadv/error.hpp"

namespace qadv::data {

PcaBasis fit_pca(const Matrix& x, Index k) {
  const Index d = x.cols();
  if (k < 1 || k > d) raise(Errc::InvalidArgument, "PCA needs 1 <= k <= d");
  if (x.rows() < 2) raise(Errc::TooFewSamples, "PCA needs at least two rows");

  PcaBasis basis;
  basis.mean = x.colwise().mean().transpose();
  const Matrix centred = x.rowwise() - basis.mean.transpose();
  const Matrix cov = (centred.transpose() * centred) / static_cast<double>(x.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  // Eigen returns ascending eigenvalues.
  const Vector eigenvalues = solver.eigenvalues().cwiseMax(0.0);
  const double total = eigenvalues.sum();

  basis.components.resize(k, d);
  basis.explained_variance_ratio.resize(k);
  for (Index c = 0; c < k; ++c) {
    const Index src = d - 1 - c;
    Vector axis = solver.eigenvectors().col(src);
    Index argmax = 0;
    axis.cwiseAbs().maxCoeff(&argmax);
    if (axis(argmax) < 0.0) axis = -axis;
    basis.components.row(c) = axis.transpose();
    basis.explained_variance_ratio(c) = total > 0.0 ? eigenvalues(src) / total : 0.0;
  }
  return basis;
}

Matrix project(const PcaBasis& basis, const Matrix& x) {
  if (x.cols() != basis.input_dims())
    raise(Errc::DimensionMismatch, "PCA basis expects " + std::to_string(basis.input_dims()) + " columns");
  return (x.rowwise() - basis.mean.transpose()) * basis.components.transpose();
}

FeatureMatrix project(const PcaBasis& basis, const FeatureMatrix& x) {
  FeatureMatrix out;
  out.values = project(basis, x.values);
  for (Index c = 0; c < basis.output_dims(); ++c) out.column_names.push_back("pc" + std::to_string(c + 1));
  return out;
}

Matrix reconstruct(const PcaBasis& basis, const Matrix& projected) {
  if (projected.cols() != basis.output_dims())
    raise(Errc::DimensionMismatch, "projection has wrong width");
  return (projected * basis.components).rowwise() + basis.mean.transpose();
}

}  // namespace qadv::data
