#include "qadv/eval/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qadv/error.hpp"

namespace qadv::eval {

namespace {

struct BinSums {
  double pred = 0.0;
  double obs = 0.0;
  Index count = 0;
};

double weighted_gap(const std::vector<BinSums>& bins, double n) {
  double total = 0.0;
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    const double c = static_cast<double>(b.count);
    total += (c / n) * std::abs(b.pred / c - b.obs / c);
  }
  return total;
}

}  // namespace

CalibrationReport calibration(const Vector& y, const Vector& yhat, int n_bins) {
  if (y.size() != yhat.size()) raise(Errc::ShapeMismatch, "targets and predictions differ in length");
  if (y.size() == 0) raise(Errc::TooFewSamples, "calibration needs at least one pair");
  if (n_bins < 1) raise(Errc::InvalidArgument, "n_bins must be >= 1");
  const Index n = y.size();
  const double nd = static_cast<double>(n);
  CalibrationReport rep;
  rep.brier = (yhat - y).squaredNorm() / nd;
  rep.degenerate = (yhat.array() == yhat(0)).all();

  std::vector<BinSums> width_bins(static_cast<std::size_t>(n_bins));
  for (Index i = 0; i < n; ++i) {
    const double p = std::clamp(yhat(i), 0.0, 1.0);
    const auto b = std::min(static_cast<int>(std::floor(p * n_bins)), n_bins - 1);
    auto& s = width_bins[static_cast<std::size_t>(b)];
    s.pred += yhat(i);
    s.obs += y(i);
    ++s.count;
  }
  rep.ece = weighted_gap(width_bins, nd);
  for (int b = 0; b < n_bins; ++b) {
    const auto& s = width_bins[static_cast<std::size_t>(b)];
    if (s.count == 0) continue;
    ReliabilityBin rb;
    rb.lower = static_cast<double>(b) / n_bins;
    rb.upper = static_cast<double>(b + 1) / n_bins;
    rb.center = 0.5 * (rb.lower + rb.upper);
    rb.mean_predicted = s.pred / static_cast<double>(s.count);
    rb.mean_observed = s.obs / static_cast<double>(s.count);
    rb.count = s.count;
    rb.mass = static_cast<double>(s.count) / nd;
    rep.bins.push_back(rb);
  }

  // Equal-mass bins: sorted predictions split into near-equal consecutive groups.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return yhat(a) < yhat(b); });
  const Index groups = std::min<Index>(n_bins, n);
  std::vector<BinSums> mass_bins(static_cast<std::size_t>(groups));
  const Index base = n / groups, extra = n % groups;
  Index pos = 0;
  for (Index g = 0; g < groups; ++g) {
    const Index len = base + (g < extra ? 1 : 0);
    auto& s = mass_bins[static_cast<std::size_t>(g)];
    for (Index k = 0; k < len; ++k, ++pos) {
      s.pred += yhat(order[pos]);
      s.obs += y(order[pos]);
      ++s.count;
    }
  }
  rep.ace = weighted_gap(mass_bins, nd);
  return rep;
}

}  // namespace qadv::eval
