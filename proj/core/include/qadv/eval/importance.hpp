#pragma once

#include <cstdint>
#include <vector>

#include "qadv/xai/explainer.hpp"

namespace qadv::eval {

struct ImportanceReport {
  double baseline_mse = 0.0;
  Vector raw_mean;  // mean max(0, MSE_shuffled - MSE_base)
  Vector mean;      // normalized to sum 1 (all zero if no feature matters)
  Vector std;       // std over repeats of the normalized values
};

/// Repeat r shuffles every column with the same seeded row permutation, so
/// relabelling the features permutes the report accordingly.
ImportanceReport permutation_importance(const xai::PredictFn& predict, const Matrix& x, const Vector& y,
                                        int repeats, std::uint64_t seed);

}  // namespace qadv::eval
