#include "qadv/xai/explainer.hpp"

#include <cmath>

#include "qadv/error.hpp"
#include "qadv/rng.hpp"

namespace qadv::xai {

Explainer fit_explainer(const Matrix& x_train, const ExplainerConfig& cfg) {
  if (x_train.rows() < 2) raise(Errc::EmptyTraining, "explainer needs at least two training rows");
  if (cfg.n_samples < 2) raise(Errc::InvalidArgument, "explainer needs at least two samples");
  Explainer e;
  e.feature_means = x_train.colwise().mean().transpose();
  const Matrix centred = x_train.rowwise() - e.feature_means.transpose();
  e.feature_stds = (centred.colwise().squaredNorm() / static_cast<double>(x_train.rows())).cwiseSqrt().transpose();
  e.feature_stds = e.feature_stds.cwiseMax(kStdFloor);
  e.n_samples = cfg.n_samples;
  e.kernel_width = cfg.kernel_width.value_or(0.75 * std::sqrt(static_cast<double>(x_train.cols())));
  e.ridge = cfg.ridge;
  return e;
}

Explanation explain(const Explainer& explainer, const PredictFn& predict, const VectorRef& x, std::uint64_t seed) {
  const Index d = explainer.dims();
  if (x.size() != d) raise(Errc::DimensionMismatch, "instance width differs from explainer");
  const Index n = explainer.n_samples;

  Rng rng(seed);
  Matrix offsets = Matrix::Zero(n, d);  // z - x
  Vector weights(n);
  weights(0) = 1.0;
  const double width_sq = explainer.kernel_width * explainer.kernel_width;
  for (Index i = 1; i < n; ++i) {
    double dist_sq = 0.0;
    for (Index j = 0; j < d; ++j) {
      const double g = rng.normal();
      offsets(i, j) = g * explainer.feature_stds(j);
      dist_sq += g * g;
    }
    weights(i) = std::exp(-dist_sq / width_sq);
  }
  const Matrix samples = offsets.rowwise() + x.transpose();
  const Vector response = predict(samples);
  if (response.size() != n) raise(Errc::DimensionMismatch, "predict function returned the wrong number of rows");

  // Design [1, z - x]; the intercept is the surrogate's value at x.
  Matrix design(n, d + 1);
  design.col(0).setOnes();
  design.rightCols(d) = offsets;
  const Matrix weighted = design.array().colwise() * weights.array();
  Matrix gram = weighted.transpose() * design;
  const Vector rhs = weighted.transpose() * response;

  // Ridge on slopes only, relative to the weighted offset spread so that it
  // stays a damping term at any kernel width.
  const double spread = gram.diagonal().tail(d).mean();
  const double lambda = explainer.ridge * (spread > 0.0 ? spread : 1.0);
  gram.diagonal().tail(d).array() += lambda;

  const Vector coef = gram.ldlt().solve(rhs);
  if (!coef.allFinite()) raise(Errc::SingularFit, "local surrogate normal equations are singular");

  Explanation out;
  out.weights = coef.tail(d);
  out.intercept = coef(0) - out.weights.dot(x);

  const double total_weight = weights.sum();
  const double mean = weights.dot(response) / total_weight;
  const Vector fitted = design * coef;
  const double ss_res = weights.dot((response - fitted).array().square().matrix());
  const double ss_tot = weights.dot((response.array() - mean).square().matrix());
  if (ss_tot <= 1e-24 * total_weight * (1.0 + mean * mean)) {
    out.local_r2 = 1.0;
  } else {
    out.local_r2 = 1.0 - ss_res / ss_tot;
  }
  if (!std::isfinite(out.intercept) || !std::isfinite(out.local_r2))
    raise(Errc::SingularFit, "local surrogate produced non-finite values");
  return out;
}

std::vector<Explanation> explain_batch(const Explainer& explainer, const PredictFn& predict, const Matrix& x,
                                       std::span<const std::uint64_t> seeds) {
  if (seeds.size() != static_cast<std::size_t>(x.rows())) raise(Errc::DimensionMismatch, "one seed per row required");
  std::vector<Explanation> out;
  out.reserve(seeds.size());
  for (Index i = 0; i < x.rows(); ++i) {
    try {
      out.push_back(explain(explainer, predict, x.row(i).transpose(), seeds[static_cast<std::size_t>(i)]));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (row " + std::to_string(i) + ")");
    }
  }
  return out;
}

std::vector<Explanation> explain_batch(const Explainer& explainer, const PredictFn& predict, const Matrix& x,
                                       std::uint64_t seed) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(x.rows()));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = seed + i;
  return explain_batch(explainer, predict, x, seeds);
}

Matrix weight_matrix(const std::vector<Explanation>& explanations) {
  if (explanations.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Index>(explanations.size()), explanations.front().weights.size());
  for (std::size_t i = 0; i < explanations.size(); ++i) m.row(static_cast<Index>(i)) = explanations[i].weights.transpose();
  return m;
}

}  // namespace qadv::xai
