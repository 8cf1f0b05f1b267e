#include "qadv/data/split.hpp"

#include <algorithm>
#include <cmath>

#include "qadv/data/preprocess.hpp"
#include "qadv/error.hpp"
#include "qadv/rng.hpp"

namespace qadv::data {

std::vector<int> quantile_bins(const Vector& y, int n_bins) {
  if (n_bins < 1) raise(Errc::InvalidArgument, "n_bins must be >= 1");
  std::vector<int> labels(static_cast<std::size_t>(y.size()), 0);
  if (y.size() == 0 || n_bins == 1) return labels;
  const std::vector<double> values(y.data(), y.data() + y.size());
  std::vector<double> edges;
  for (int b = 1; b < n_bins; ++b) edges.push_back(quantile(values, static_cast<double>(b) / n_bins));
  for (Index i = 0; i < y.size(); ++i) {
    int label = 0;
    for (const double e : edges)
      if (y(i) > e) ++label;
    labels[static_cast<std::size_t>(i)] = label;
  }
  return labels;
}

namespace {

std::vector<std::vector<Index>> members_by_bin(const std::vector<int>& labels, int n_bins) {
  std::vector<std::vector<Index>> bins(static_cast<std::size_t>(n_bins));
  for (std::size_t i = 0; i < labels.size(); ++i) bins[static_cast<std::size_t>(labels[i])].push_back(static_cast<Index>(i));
  return bins;
}

}  // namespace

SplitIndices split_stratified(const Vector& y, double test_fraction, int n_bins, std::uint64_t seed,
                              double validation_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) raise(Errc::InvalidArgument, "test_fraction must lie in (0,1)");
  if (validation_fraction < 0.0 || test_fraction + validation_fraction >= 1.0)
    raise(Errc::InvalidArgument, "validation_fraction must be >= 0 and leave training rows");

  const auto labels = quantile_bins(y, n_bins);
  auto bins = members_by_bin(labels, n_bins);
  SplitIndices split;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    auto& members = bins[b];
    if (members.size() < 2)
      raise(Errc::BinTooSmall, "quantile bin " + std::to_string(b) + " has " + std::to_string(members.size()) +
                                   " samples");
    Rng rng(derive_seed(seed, 0x5b11u, b));
    std::shuffle(members.begin(), members.end(), rng.engine());
    const auto size = static_cast<double>(members.size());
    const auto n_test = static_cast<std::size_t>(std::lround(test_fraction * size));
    const auto n_val = static_cast<std::size_t>(std::lround(validation_fraction * size));
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i < n_test) {
        split.test.push_back(members[i]);
      } else if (i < n_test + n_val) {
        split.validation.push_back(members[i]);
      } else {
        split.train.push_back(members[i]);
      }
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.validation.begin(), split.validation.end());
  return split;
}

SplitIndices kfold(Index n, int k, const Vector& y, std::uint64_t seed, int n_bins) {
  if (k < 2) raise(Errc::InvalidArgument, "k-fold needs k >= 2");
  if (n < k) raise(Errc::TooFewSamples, std::to_string(n) + " samples cannot fill " + std::to_string(k) + " folds");
  if (y.size() != n) raise(Errc::DimensionMismatch, "target length differs from n");

  const auto labels = quantile_bins(y, n_bins);
  auto bins = members_by_bin(labels, n_bins);
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < bins.size(); ++b) {
    Rng rng(derive_seed(seed, 0xf01du, b));
    std::shuffle(bins[b].begin(), bins[b].end(), rng.engine());
    order.insert(order.end(), bins[b].begin(), bins[b].end());
  }
  SplitIndices split;
  split.folds.resize(static_cast<std::size_t>(k));
  for (std::size_t p = 0; p < order.size(); ++p) split.folds[p % static_cast<std::size_t>(k)].push_back(order[p]);
  for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
  return split;
}

}  // namespace qadv::data
