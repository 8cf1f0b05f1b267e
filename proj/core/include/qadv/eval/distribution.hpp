#pragma once

#include <vector>

#include "qadv/types.hpp"

namespace qadv::eval {

struct DistributionalMetrics {
  double silhouette = 0.0;
  double calinski_harabasz = 0.0;
  double davies_bouldin = 0.0;
  double wasserstein = 0.0;
  double ks = 0.0;
};

double silhouette_score(const Matrix& x, const std::vector<int>& labels);
double calinski_harabasz_score(const Matrix& x, const std::vector<int>& labels);
/// Infinite when two cluster centroids coincide.
double davies_bouldin_score(const Matrix& x, const std::vector<int>& labels);
/// 1-D Wasserstein-1 distance between empirical distributions.
double wasserstein_1d(std::vector<double> a, std::vector<double> b);
/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Cluster scores on `x_noisy` with `labels`, marginal distances averaged
/// over features. Throws SingleCluster for fewer than two distinct labels.
DistributionalMetrics distributional_metrics(const Matrix& x_clean, const Matrix& x_noisy,
                                             const std::vector<int>& labels);

}  // namespace qadv::eval
