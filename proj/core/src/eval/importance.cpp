#include "qadv/eval/importance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qadv/error.hpp"
#include "qadv/rng.hpp"

namespace qadv::eval {

namespace {

constexpr Index kMinImportanceRows = 10;

double mse(const xai::PredictFn& predict, const Matrix& x, const Vector& y) {
  const Vector p = predict(x);
  if (p.size() != y.size()) raise(Errc::ShapeMismatch, "model returned the wrong number of predictions");
  return (p - y).squaredNorm() / static_cast<double>(y.size());
}

}  // namespace

ImportanceReport permutation_importance(const xai::PredictFn& predict, const Matrix& x, const Vector& y,
                                        int repeats, std::uint64_t seed) {
  if (x.rows() != y.size()) raise(Errc::ShapeMismatch, "features and targets differ in rows");
  if (x.rows() < kMinImportanceRows) raise(Errc::TooFewSamples, "permutation importance needs at least 10 rows");
  if (repeats < 1) raise(Errc::InvalidArgument, "repeats must be >= 1");
  const Index n = x.rows(), d = x.cols();
  ImportanceReport rep;
  rep.baseline_mse = mse(predict, x, y);
  Matrix raw(repeats, d);
  for (int r = 0; r < repeats; ++r) {
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    for (Index j = 0; j < d; ++j) {
      Matrix shuffled = x;
      for (Index i = 0; i < n; ++i) shuffled(i, j) = x(perm[static_cast<std::size_t>(i)], j);
      raw(r, j) = std::max(0.0, mse(predict, shuffled, y) - rep.baseline_mse);
    }
  }
  rep.raw_mean = raw.colwise().mean().transpose();
  const double total = rep.raw_mean.sum();
  const Matrix normalized = total > 0.0 ? Matrix(raw / total) : Matrix(Matrix::Zero(repeats, d));
  rep.mean = normalized.colwise().mean().transpose();
  rep.std.resize(d);
  for (Index j = 0; j < d; ++j) {
    const double m = rep.mean(j);
    rep.std(j) = std::sqrt((normalized.col(j).array() - m).square().mean());
  }
  return rep;
}

}  // namespace qadv::eval
