#include "qadv/eval/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qadv/error.hpp"
#include "qadv/rng.hpp"

namespace qadv::eval {

namespace {

constexpr double kJitterFraction = 0.05;

Vector column_std(const Matrix& x) {
  Vector s(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    s(j) = std::sqrt((x.col(j).array() - mean).square().mean());
  }
  return s;
}

Matrix covariance_sqrt(const Matrix& x) {
  const RowVector mean = x.colwise().mean();
  const Matrix centred = x.rowwise() - mean;
  const double denom = static_cast<double>(std::max<Index>(x.rows() - 1, 1));
  const Matrix cov = centred.transpose() * centred / denom;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  const Vector roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal();
}

}  // namespace

std::string_view to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::oversample: return "oversample";
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::bootstrap: return "bootstrap";
    case NoiseKind::mvnormal: return "mvnormal";
  }
  return "gaussian";
}

NoiseKind parse_noise_kind(std::string_view text) {
  for (auto k : kAllNoiseKinds)
    if (to_string(k) == text) return k;
  raise(Errc::Config, "unknown noise kind '" + std::string(text) + "'");
}

NoisyData inject_noise(NoiseKind kind, const Matrix& x, const Vector& y, double magnitude, std::uint64_t seed) {
  if (!(magnitude > 0.0 && magnitude <= 1.0)) raise(Errc::InvalidArgument, "noise magnitude must lie in (0, 1]");
  if (x.rows() != y.size()) raise(Errc::ShapeMismatch, "features and targets differ in rows");
  if (x.rows() == 0) raise(Errc::TooFewSamples, "cannot perturb an empty set");
  Rng rng(seed);
  const Index n = x.rows(), d = x.cols();
  NoisyData out;
  switch (kind) {
    case NoiseKind::oversample: {
      const auto extra = static_cast<Index>(std::lround(magnitude * static_cast<double>(n)));
      std::vector<Index> pool(static_cast<std::size_t>(n));
      std::iota(pool.begin(), pool.end(), Index{0});
      std::shuffle(pool.begin(), pool.end(), rng.engine());
      const Vector sd = column_std(x) * kJitterFraction;
      out.x.resize(n + extra, d);
      out.y.resize(n + extra);
      out.x.topRows(n) = x;
      out.y.head(n) = y;
      for (Index k = 0; k < extra; ++k) {
        const Index src = pool[static_cast<std::size_t>(k)];
        for (Index j = 0; j < d; ++j) out.x(n + k, j) = x(src, j) + sd(j) * rng.normal();
        out.y(n + k) = y(src);
      }
      break;
    }
    case NoiseKind::gaussian: {
      const Vector sd = column_std(x) * magnitude;
      out.x = x;
      out.y = y;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) out.x(i, j) += sd(j) * rng.normal();
      break;
    }
    case NoiseKind::bootstrap: {
      out.x.resize(n, d);
      out.y.resize(n);
      for (Index i = 0; i < n; ++i) {
        const auto src = static_cast<Index>(rng.index(static_cast<std::uint64_t>(n)));
        out.x.row(i) = x.row(src);
        out.y(i) = y(src);
      }
      break;
    }
    case NoiseKind::mvnormal: {
      const Matrix root = covariance_sqrt(x);
      Matrix z(n, d);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < d; ++j) z(i, j) = rng.normal();
      out.x = x + magnitude * (z * root.transpose());
      out.y = y;
      break;
    }
  }
  return out;
}

}  // namespace qadv::eval
