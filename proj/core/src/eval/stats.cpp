#include "qadv/eval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "qadv/error.hpp"

namespace qadv::eval {

namespace {

constexpr Index kExactWilcoxonMax = 25;

Vector differences(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) raise(Errc::ShapeMismatch, "paired samples differ in length");
  return a - b;
}

// Average ranks (1-based) of the values.
std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

TestResult paired_t_test(const Vector& a, const Vector& b) {
  const Vector d = differences(a, b);
  const Index n = d.size();
  if (n < 2) raise(Errc::TooFewSamples, "paired t-test needs at least 2 pairs");
  const double mean = d.mean();
  const double var = (d.array() - mean).square().sum() / static_cast<double>(n - 1);
  if (var == 0.0) {
    if (mean == 0.0) return {0.0, 1.0};
    return {mean > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity(), 0.0};
  }
  const double t = mean / std::sqrt(var / static_cast<double>(n));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return {t, std::min(1.0, p)};
}

TestResult wilcoxon_signed_rank(const Vector& a, const Vector& b) {
  const Vector d = differences(a, b);
  std::vector<double> mags;
  std::vector<int> signs;
  for (Index i = 0; i < d.size(); ++i) {
    if (d(i) == 0.0) continue;
    mags.push_back(std::abs(d(i)));
    signs.push_back(d(i) > 0 ? 1 : -1);
  }
  const auto n = static_cast<Index>(mags.size());
  if (n == 0) return {0.0, 1.0};
  const auto ranks = average_ranks(mags);
  double w_plus = 0.0, w_minus = 0.0;
  for (Index i = 0; i < n; ++i) (signs[i] > 0 ? w_plus : w_minus) += ranks[i];
  const double statistic = w_plus - w_minus;
  const double w_small = std::min(w_plus, w_minus);

  if (n <= kExactWilcoxonMax) {
    // Ranks are multiples of 1/2; count sign assignments over doubled ranks.
    std::vector<int> doubled(n);
    int total = 0;
    for (Index i = 0; i < n; ++i) {
      doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
      total += doubled[i];
    }
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    for (int r : doubled)
      for (int s = total; s >= r; --s) counts[s] += counts[s - r];
    const int limit = static_cast<int>(std::lround(2.0 * w_small));
    double tail = 0.0;
    for (int s = 0; s <= limit; ++s) tail += counts[s];
    const double p = 2.0 * tail / std::ldexp(1.0, static_cast<int>(n));
    return {statistic, std::min(1.0, p)};
  }

  const double nd = static_cast<double>(n);
  double tie_term = 0.0;
  {
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
  }
  const double mean = nd * (nd + 1.0) / 4.0;
  const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
  const double z = (w_small - mean) / std::sqrt(var);
  const boost::math::normal norm;
  const double p = 2.0 * boost::math::cdf(norm, z);
  return {statistic, std::min(1.0, p)};
}

double t_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) raise(Errc::InvalidArgument, "quantile probability must lie in (0,1)");
  if (!(dof > 0.0)) raise(Errc::InvalidArgument, "degrees of freedom must be positive");
  return boost::math::quantile(boost::math::students_t(dof), p);
}

ConfidenceInterval mean_ci(const Vector& values, double level) {
  const Index n = values.size();
  if (n < 2) raise(Errc::TooFewSamples, "confidence interval needs at least 2 values");
  if (!(level > 0.0 && level < 1.0)) raise(Errc::InvalidArgument, "confidence level must lie in (0,1)");
  ConfidenceInterval ci;
  ci.mean = values.mean();
  const double sd = std::sqrt((values.array() - ci.mean).square().sum() / static_cast<double>(n - 1));
  ci.half_width = t_quantile(0.5 * (1.0 + level), static_cast<double>(n - 1)) * sd / std::sqrt(static_cast<double>(n));
  ci.lower = ci.mean - ci.half_width;
  ci.upper = ci.mean + ci.half_width;
  return ci;
}

}  // namespace qadv::eval
