#pragma once

#include <cstdint>
#include <vector>

#include "qadv/types.hpp"

namespace qadv::data {

struct SplitIndices {
  std::vector<Index> train;
  std::vector<Index> test;
  std::vector<Index> validation;
  std::vector<std::vector<Index>> folds;
};

/// Discretizes a continuous target into `n_bins` quantile classes
/// (0 = lowest). Bins are right-closed, like pandas.qcut.
std::vector<int> quantile_bins(const Vector& y, int n_bins);

/// Stratified hold-out split. `validation_fraction` (of the whole set) is
/// carved from what remains after the test rows are taken.
SplitIndices split_stratified(const Vector& y, double test_fraction, int n_bins, std::uint64_t seed,
                              double validation_fraction = 0.0);

/// Stratified k-fold partition; fold sizes differ by at most one.
SplitIndices kfold(Index n, int k, const Vector& y, std::uint64_t seed, int n_bins = 3);

}  // namespace qadv::data
