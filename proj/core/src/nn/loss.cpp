#include "qadv/nn/loss.hpp"

#include <algorithm>
#include <cmath>

#include "qadv/error.hpp"

namespace qadv::nn {

LossResult mse_loss(const MatrixRef& pred, const MatrixRef& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    raise(Errc::ShapeMismatch, "mse_loss operands differ in shape");
  if (pred.size() == 0) raise(Errc::ShapeMismatch, "mse_loss of empty input");
  const auto n = static_cast<double>(pred.size());
  const Matrix diff = pred - target;
  return {diff.squaredNorm() / n, diff * (2.0 / n)};
}

LossResult bce_loss(const MatrixRef& pred, const MatrixRef& labels, double eps) {
  if (pred.rows() != labels.rows() || pred.cols() != labels.cols())
    raise(Errc::ShapeMismatch, "bce_loss operands differ in shape");
  if (pred.size() == 0) raise(Errc::ShapeMismatch, "bce_loss of empty input");
  const auto n = static_cast<double>(pred.size());
  LossResult out;
  out.grad.resize(pred.rows(), pred.cols());
  double total = 0.0;
  for (Index j = 0; j < pred.cols(); ++j) {
    for (Index i = 0; i < pred.rows(); ++i) {
      const double raw = pred(i, j);
      const double p = std::clamp(raw, eps, 1.0 - eps);
      const double y = labels(i, j);
      total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
      const bool clamped = raw < eps || raw > 1.0 - eps;
      out.grad(i, j) = clamped ? 0.0 : (-y / p + (1.0 - y) / (1.0 - p)) / n;
    }
  }
  out.value = total / n;
  return out;
}

}  // namespace qadv::nn
