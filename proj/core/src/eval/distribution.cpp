#include "qadv/eval/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qadv/error.hpp"

namespace qadv::eval {

namespace {

struct Clusters {
  std::vector<int> ids;                 // distinct labels, ascending
  std::vector<std::vector<Index>> rows; // members per label
  Matrix centroids;                     // k x d
};

Clusters group(const Matrix& x, const std::vector<int>& labels) {
  if (static_cast<Index>(labels.size()) != x.rows()) raise(Errc::ShapeMismatch, "one label per row required");
  std::map<int, std::vector<Index>> members;
  for (Index i = 0; i < x.rows(); ++i) members[labels[static_cast<std::size_t>(i)]].push_back(i);
  if (members.size() < 2) raise(Errc::SingleCluster, "cluster metrics need at least 2 distinct labels");
  Clusters c;
  c.centroids = Matrix::Zero(static_cast<Index>(members.size()), x.cols());
  Index k = 0;
  for (auto& [id, rows] : members) {
    for (Index r : rows) c.centroids.row(k) += x.row(r);
    c.centroids.row(k) /= static_cast<double>(rows.size());
    c.ids.push_back(id);
    c.rows.push_back(std::move(rows));
    ++k;
  }
  return c;
}

std::vector<double> column(const Matrix& m, Index j) {
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m(i, j);
  return out;
}

}  // namespace

double silhouette_score(const Matrix& x, const std::vector<int>& labels) {
  const auto c = group(x, labels);
  const Index n = x.rows();
  const auto k = c.rows.size();
  std::vector<std::size_t> cluster_of(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < k; ++g)
    for (Index r : c.rows[g]) cluster_of[static_cast<std::size_t>(r)] = g;
  double total = 0.0;
  std::vector<double> sums(k);
  for (Index i = 0; i < n; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      sums[cluster_of[static_cast<std::size_t>(j)]] += (x.row(i) - x.row(j)).norm();
    }
    const auto own = cluster_of[static_cast<std::size_t>(i)];
    const auto own_size = c.rows[own].size();
    if (own_size < 2) continue;  // singleton clusters score 0
    const double a = sums[own] / static_cast<double>(own_size - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < k; ++g)
      if (g != own) b = std::min(b, sums[g] / static_cast<double>(c.rows[g].size()));
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

double calinski_harabasz_score(const Matrix& x, const std::vector<int>& labels) {
  const auto c = group(x, labels);
  const Index n = x.rows();
  const auto k = static_cast<Index>(c.rows.size());
  const RowVector mean = x.colwise().mean();
  double between = 0.0, within = 0.0;
  for (Index g = 0; g < k; ++g) {
    between += static_cast<double>(c.rows[static_cast<std::size_t>(g)].size()) * (c.centroids.row(g) - mean).squaredNorm();
    for (Index r : c.rows[static_cast<std::size_t>(g)]) within += (x.row(r) - c.centroids.row(g)).squaredNorm();
  }
  if (within == 0.0) return 1.0;
  if (n == k) return 1.0;
  return (between / static_cast<double>(k - 1)) / (within / static_cast<double>(n - k));
}

double davies_bouldin_score(const Matrix& x, const std::vector<int>& labels) {
  const auto c = group(x, labels);
  const auto k = static_cast<Index>(c.rows.size());
  Vector scatter(k);
  for (Index g = 0; g < k; ++g) {
    double s = 0.0;
    for (Index r : c.rows[static_cast<std::size_t>(g)]) s += (x.row(r) - c.centroids.row(g)).norm();
    scatter(g) = s / static_cast<double>(c.rows[static_cast<std::size_t>(g)].size());
  }
  double total = 0.0;
  for (Index i = 0; i < k; ++i) {
    double worst = 0.0;
    for (Index j = 0; j < k; ++j) {
      if (i == j) continue;
      const double dist = (c.centroids.row(i) - c.centroids.row(j)).norm();
      const double ratio =
          dist > 0.0 ? (scatter(i) + scatter(j)) / dist : std::numeric_limits<double>::infinity();
      worst = std::max(worst, ratio);
    }
    total += worst;
  }
  return total / static_cast<double>(k);
}

double wasserstein_1d(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) raise(Errc::TooFewSamples, "Wasserstein distance needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> all;
  all.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double total = 0.0;
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    while (ia < a.size() && a[ia] <= all[i]) ++ia;
    while (ib < b.size() && b[ib] <= all[i]) ++ib;
    total += std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb) * (all[i + 1] - all[i]);
  }
  return total;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) raise(Errc::TooFewSamples, "KS statistic needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double best = 0.0;
  while (ia < a.size() || ib < b.size()) {
    double v;
    if (ib >= b.size() || (ia < a.size() && a[ia] <= b[ib]))
      v = a[ia];
    else
      v = b[ib];
    while (ia < a.size() && a[ia] <= v) ++ia;
    while (ib < b.size() && b[ib] <= v) ++ib;
    best = std::max(best, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return best;
}

DistributionalMetrics distributional_metrics(const Matrix& x_clean, const Matrix& x_noisy,
                                             const std::vector<int>& labels) {
  if (x_clean.cols() != x_noisy.cols()) raise(Errc::ShapeMismatch, "clean and noisy sets differ in width");
  DistributionalMetrics m;
  m.silhouette = silhouette_score(x_noisy, labels);
  m.calinski_harabasz = calinski_harabasz_score(x_noisy, labels);
  m.davies_bouldin = davies_bouldin_score(x_noisy, labels);
  const auto d = x_clean.cols();
  for (Index j = 0; j < d; ++j) {
    m.wasserstein += wasserstein_1d(column(x_clean, j), column(x_noisy, j));
    m.ks += ks_statistic(column(x_clean, j), column(x_noisy, j));
  }
  if (d > 0) {
    m.wasserstein /= static_cast<double>(d);
    m.ks /= static_cast<double>(d);
  }
  return m;
}

}  // namespace qadv::eval
