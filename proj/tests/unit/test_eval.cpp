#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "qadv/data/split.hpp"
#include "qadv/data/synthetic.hpp"
#include "qadv/error.hpp"
#include "qadv/eval/calibration.hpp"
#include "qadv/eval/conformal.hpp"
#include "qadv/eval/crossval.hpp"
#include "qadv/eval/distribution.hpp"
#include "qadv/eval/importance.hpp"
#include "qadv/eval/metrics.hpp"
#include "qadv/eval/noise.hpp"
#include "qadv/eval/profile.hpp"
#include "qadv/eval/robustness.hpp"
#include "qadv/eval/stats.hpp"
#include "qadv/rng.hpp"

using namespace qadv;
using namespace qadv::eval;

namespace {

Vector uniform_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.uniform();
  return v;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

// Exact two-sided signed-rank p-value by enumerating every sign pattern of
// the ranks 1..n (tie-free input).
double brute_force_wilcoxon_p(const Vector& d) {
  const auto n = static_cast<int>(d.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(d(a)) < std::abs(d(b)); });
  double observed = 0.0;
  for (int r = 0; r < n; ++r) observed += (d(order[r]) > 0 ? 1.0 : -1.0) * (r + 1);
  int extreme = 0;
  const int total = 1 << n;
  for (int mask = 0; mask < total; ++mask) {
    double s = 0.0;
    for (int r = 0; r < n; ++r) s += ((mask >> r) & 1 ? 1.0 : -1.0) * (r + 1);
    if (std::abs(s) >= std::abs(observed) - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / total;
}

train::TrainConfig tiny_train(std::uint64_t seed = 1) {
  train::TrainConfig cfg;
  cfg.seed = seed;
  cfg.epochs = 1;
  cfg.batch_size = 16;
  cfg.qnn.hidden = {8};
  cfg.explainer.n_samples = 8;
  return cfg;
}

}  // namespace

TEST(Metrics, PerfectAndMeanPredictors) {
  Rng rng(1);
  const Vector y = uniform_vector(50, rng);
  const auto perfect = regression_metrics(y, y, 1.0);
  EXPECT_EQ(perfect.mse, 0.0);
  EXPECT_EQ(perfect.r2, 1.0);
  EXPECT_EQ(perfect.pct_rmse, 100.0);
  EXPECT_EQ(perfect.pct_mse, 100.0);
  EXPECT_EQ(perfect.pct_mae, 100.0);
  const auto mean = regression_metrics(y, Vector::Constant(50, y.mean()), 1.0);
  EXPECT_NEAR(mean.r2, 0.0, 1e-12);
}

TEST(Metrics, IdentitiesAndSpotValues) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector y = uniform_vector(30, rng), p = uniform_vector(30, rng);
    const auto m = regression_metrics(y, p, 1.0);
    EXPECT_NEAR(m.rmse * m.rmse, m.mse, 1e-12);
    EXPECT_LE(m.r2, 1.0);
    EXPECT_GE(m.mae, 0.0);
  }
  EXPECT_DOUBLE_EQ(range_accuracy(0.25, 1.0), 75.0);
  EXPECT_DOUBLE_EQ(range_accuracy(3.0, 1.0), 0.0);
  EXPECT_GT(range_accuracy(0.1, 1.0), range_accuracy(0.2, 1.0));
  Vector y(2), p(2);
  y << 0.0, 1.0;
  p << 0.25, 0.75;
  const auto m = regression_metrics(y, p, 1.0);
  EXPECT_DOUBLE_EQ(m.mae, 0.25);
  EXPECT_DOUBLE_EQ(m.pct_mae, 75.0);
}

TEST(Metrics, Errors) {
  EXPECT_EQ(code_of([] { regression_metrics(Vector::Ones(3), Vector::Zero(3), 1.0); }), Errc::ZeroVariance);
  EXPECT_EQ(code_of([] { regression_metrics(Vector::Ones(1), Vector::Zero(1), 1.0); }), Errc::TooFewSamples);
  EXPECT_EQ(code_of([] { regression_metrics(Vector::LinSpaced(3, 0, 1), Vector::Zero(3), 0.0); }),
            Errc::InvalidArgument);
}

TEST(Calibration, PerfectPredictions) {
  Rng rng(3);
  const Vector y = uniform_vector(500, rng);
  const auto rep = calibration(y, y);
  EXPECT_NEAR(rep.ece, 0.0, 1e-15);
  EXPECT_NEAR(rep.ace, 0.0, 1e-15);
  EXPECT_EQ(rep.brier, 0.0);
  double mass = 0.0;
  for (const auto& b : rep.bins) mass += b.mass;
  EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(Calibration, ConstantShift) {
  Rng rng(4);
  const Vector y = uniform_vector(20000, rng);
  const Vector p = (y.array() + 0.1).min(1.0);
  const auto rep = calibration(y, p);
  EXPECT_NEAR(rep.ece, 0.1, 0.01);
  EXPECT_GE(rep.ace, 0.0);
}

TEST(Calibration, BrierMatchesMseAndSingleBin) {
  Rng rng(5);
  const Vector y = uniform_vector(200, rng), p = uniform_vector(200, rng);
  EXPECT_NEAR(calibration(y, p).brier, regression_metrics(y, p, 1.0).mse, 1e-12);
  EXPECT_NEAR(calibration(y, p, 1).ece, std::abs(p.mean() - y.mean()), 1e-12);
  const auto deg = calibration(y, Vector::Constant(200, 0.4));
  EXPECT_TRUE(deg.degenerate);
  EXPECT_NEAR(deg.ece, std::abs(0.4 - y.mean()), 1e-12);
}

TEST(Conformal, HalfWidthOrderStatistic) {
  std::vector<double> r(10);
  std::iota(r.begin(), r.end(), 1.0);
  EXPECT_EQ(conformal_half_width(r, 0.5), 6.0);
  EXPECT_EQ(conformal_half_width(r, 0.9), 10.0);
  EXPECT_TRUE(std::isinf(conformal_half_width(r, 0.95)));
}

TEST(Conformal, ZeroResiduals) {
  const Vector y = Vector::LinSpaced(10, 0, 1);
  Vector p = y;
  p(0) += 0.5;
  p(1) += 0.5;
  const auto rep = conformal(Vector::Zero(20), {0.5, 0.9}, y, p);
  EXPECT_EQ(rep.half_widths[0], 0.0);
  EXPECT_NEAR(rep.coverage[1], 0.8, 1e-15);
}

TEST(Conformal, GaussianResidualCoverage) {
  Rng rng(6);
  Vector cal(500), y(1000), p(1000);
  for (Index i = 0; i < 500; ++i) cal(i) = rng.normal(0.0, 0.1);
  for (Index i = 0; i < 1000; ++i) {
    y(i) = rng.uniform();
    p(i) = y(i) + rng.normal(0.0, 0.1);
  }
  const auto rep = conformal(cal, kDefaultConformalLevels, y, p);
  const auto at90 = std::find(rep.levels.begin(), rep.levels.end(), 0.9) - rep.levels.begin();
  EXPECT_GE(rep.coverage[at90], 0.87);
  EXPECT_LE(rep.coverage[at90], 0.93);
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    EXPECT_GE(rep.half_widths[i], rep.half_widths[i - 1]);
    EXPECT_GE(rep.coverage[i], rep.coverage[i - 1]);
  }
  ASSERT_EQ(rep.intervals.size(), 2u);
  EXPECT_EQ(rep.intervals[0].level, 0.9);
  EXPECT_NEAR(rep.intervals[0].upper(3) - rep.intervals[0].lower(3), 2 * rep.half_widths[at90], 1e-12);
}

TEST(Conformal, TooFewCalibrationRows) {
  EXPECT_EQ(code_of([] { conformal(Vector::Zero(9), {0.9}, Vector::Zero(3), Vector::Zero(3)); }),
            Errc::TooFewCalibration);
}

TEST(Noise, GaussianVanishesWithMagnitude) {
  Rng rng(7);
  Matrix x(200, 3);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  const Vector y = uniform_vector(200, rng);
  const double max_std = ((x.rowwise() - x.colwise().mean()).colwise().norm() / std::sqrt(200.0)).maxCoeff();
  for (double m : {0.1, 1e-3, 1e-6}) {
    const auto out = inject_noise(NoiseKind::gaussian, x, y, m, 1);
    EXPECT_LT((out.x - x).cwiseAbs().maxCoeff(), 5 * m * max_std);
    EXPECT_EQ(out.y, y);
  }
}

TEST(Noise, BootstrapAndOversampleShapes) {
  Rng rng(8);
  Matrix x(100, 2);
  for (Index i = 0; i < 100; ++i) x.row(i) << i, -i;
  const Vector y = x.col(0);
  const auto boot = inject_noise(NoiseKind::bootstrap, x, y, 0.5, 2);
  ASSERT_EQ(boot.x.rows(), 100);
  for (Index i = 0; i < 100; ++i) {
    const double v = boot.x(i, 0);
    EXPECT_EQ(v, std::round(v));
    EXPECT_EQ(boot.x(i, 1), -v);
    EXPECT_EQ(boot.y(i), v);
  }
  const auto over = inject_noise(NoiseKind::oversample, x, y, 0.2, 3);
  EXPECT_EQ(over.x.rows(), 120);
  EXPECT_EQ(over.x.topRows(100), x);
}

TEST(Noise, MvnormalCovariance) {
  Rng rng(9);
  const Index n = 100000;
  Matrix x(n, 2);
  for (Index i = 0; i < n; ++i) {
    const double a = rng.normal(), b = rng.normal();
    x.row(i) << a, 0.6 * a + 0.8 * b;
  }
  const Vector y = Vector::Zero(n);
  const double m = 0.5;
  const auto out = inject_noise(NoiseKind::mvnormal, x, y, m, 4);
  const Matrix delta = out.x - x;
  const Matrix cov = delta.transpose() * delta / static_cast<double>(n - 1);
  const Matrix centred = x.rowwise() - x.colwise().mean();
  const Matrix sigma = centred.transpose() * centred / static_cast<double>(n - 1);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) EXPECT_NEAR(cov(i, j), m * m * sigma(i, j), 0.1 * m * m * sigma(i, i));
}

TEST(Noise, ParseAndValidate) {
  EXPECT_EQ(parse_noise_kind("mvnormal"), NoiseKind::mvnormal);
  EXPECT_EQ(to_string(NoiseKind::oversample), "oversample");
  EXPECT_THROW(inject_noise(NoiseKind::gaussian, Matrix::Zero(3, 1), Vector::Zero(3), 0.0, 1), Error);
}

TEST(Distribution, IdenticalSamplesHaveZeroDistance) {
  Rng rng(10);
  Matrix x(60, 2);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  std::vector<int> labels(60);
  for (int i = 0; i < 60; ++i) labels[i] = i % 3;
  const auto m = distributional_metrics(x, x, labels);
  EXPECT_EQ(m.wasserstein, 0.0);
  EXPECT_EQ(m.ks, 0.0);
  EXPECT_GE(m.davies_bouldin, 0.0);
  EXPECT_GE(m.silhouette, -1.0);
  EXPECT_LE(m.silhouette, 1.0);
}

TEST(Distribution, SeparatedBlobs) {
  Rng rng(11);
  Matrix x(200, 2);
  std::vector<int> labels(200);
  for (Index i = 0; i < 200; ++i) {
    labels[i] = i < 100 ? 0 : 1;
    x.row(i) << rng.normal(labels[i] * 10.0, 1.0), rng.normal();
  }
  EXPECT_GT(silhouette_score(x, labels), 0.7);
  Matrix far = x;
  for (Index i = 100; i < 200; ++i) far(i, 0) += 20.0;
  EXPECT_GT(silhouette_score(far, labels), 0.9);
  EXPECT_GT(calinski_harabasz_score(far, labels), 1000.0);
  EXPECT_LT(davies_bouldin_score(far, labels), 0.2);
}

TEST(Distribution, OverlappingBlobsScoreBadly) {
  Rng rng(12);
  Matrix x(400, 2);
  std::vector<int> labels(400);
  for (Index i = 0; i < 400; ++i) {
    labels[i] = i % 2;
    x.row(i) << rng.normal(), rng.normal();
  }
  EXPECT_GE(davies_bouldin_score(x, labels), 10.0);
  Matrix same(4, 1);
  same << 0, 1, 0, 1;
  EXPECT_TRUE(std::isinf(davies_bouldin_score(same, {0, 0, 1, 1})));
  EXPECT_EQ(code_of([&] { distributional_metrics(x, x, std::vector<int>(400, 0)); }), Errc::SingleCluster);
}

TEST(Distribution, MarginalDistances) {
  EXPECT_NEAR(wasserstein_1d({0, 1, 2}, {0.5, 1.5, 2.5}), 0.5, 1e-15);
  EXPECT_NEAR(wasserstein_1d({0, 0}, {1}), 1.0, 1e-15);
  EXPECT_EQ(ks_statistic({0, 1}, {5, 6}), 1.0);
  EXPECT_NEAR(ks_statistic({0, 1, 2, 3}, {2, 3, 4, 5}), 0.5, 1e-15);
}

TEST(Importance, UnusedFeatureScoresZeroAndMeansSumToOne) {
  Rng rng(13);
  Matrix x(100, 3);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  const Vector y = 2.0 * x.col(0) + x.col(1);
  const xai::PredictFn model = [](const Matrix& z) -> Vector { return 2.0 * z.col(0) + z.col(1); };
  const auto rep = permutation_importance(model, x, y, 10, 5);
  EXPECT_EQ(rep.mean(2), 0.0);
  EXPECT_NEAR(rep.mean.sum(), 1.0, 1e-9);
  EXPECT_GT(rep.mean(0), rep.mean(1));
  EXPECT_EQ(rep.baseline_mse, 0.0);
  EXPECT_EQ(code_of([&] { permutation_importance(model, x.topRows(9), y.head(9), 2, 1); }), Errc::TooFewSamples);
}

TEST(Importance, DominantFeatureOfFittedLinearModel) {
  Rng rng(14);
  Matrix x(500, 8);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  Vector y = 5.0 * x.col(0) + 0.1 * x.col(1);
  for (Index i = 0; i < 500; ++i) y(i) += rng.normal(0.0, 0.05);
  Matrix design(500, 9);
  design << x, Vector::Ones(500);
  const Vector coef = design.colPivHouseholderQr().solve(y);
  const xai::PredictFn model = [coef](const Matrix& z) -> Vector {
    return (z * coef.head(8)).array() + coef(8);
  };
  const auto rep = permutation_importance(model, x, y, 10, 1);
  EXPECT_GT(rep.mean(0), 0.8);
}

TEST(Importance, RelabellingFeaturesPermutesReport) {
  Rng rng(15);
  Matrix x(60, 3);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  const Vector y = x.col(0) + 0.5 * x.col(1) - 0.2 * x.col(2);
  const xai::PredictFn model = [](const Matrix& z) -> Vector { return z.col(0) + 0.5 * z.col(1) - 0.2 * z.col(2); };
  const std::vector<Index> perm{2, 0, 1};
  Matrix xp(60, 3);
  for (Index j = 0; j < 3; ++j) xp.col(j) = x.col(perm[j]);
  const xai::PredictFn permuted = [&](const Matrix& z) -> Vector {
    Matrix back(z.rows(), 3);
    for (Index j = 0; j < 3; ++j) back.col(perm[j]) = z.col(j);
    return model(back);
  };
  const auto a = permutation_importance(model, x, y, 5, 9);
  const auto b = permutation_importance(permuted, xp, y, 5, 9);
  for (Index j = 0; j < 3; ++j) EXPECT_NEAR(b.mean(j), a.mean(perm[j]), 1e-12);
}

TEST(Stats, StudentQuantile) {
  EXPECT_NEAR(t_quantile(0.975, 2), 4.3027, 1e-3);
  // Closed form for two degrees of freedom: t = a * sqrt(2 / (1 - a^2)), a = 2p - 1.
  for (double p : {0.6, 0.9, 0.975, 0.995}) {
    const double a = 2 * p - 1;
    EXPECT_NEAR(t_quantile(p, 2), a * std::sqrt(2 / (1 - a * a)), 1e-10);
  }
}

TEST(Stats, PairedTTestKnownValues) {
  Vector a(3), b = Vector::Zero(3);
  a << 1, 2, 3;
  const auto r = paired_t_test(a, b);
  const double t = 2.0 * std::sqrt(3.0);
  EXPECT_NEAR(r.statistic, t, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0 - t / std::sqrt(t * t + 2.0), 1e-10);
  const auto swapped = paired_t_test(b, a);
  EXPECT_NEAR(swapped.statistic, -r.statistic, 1e-12);
  EXPECT_NEAR(swapped.p_value, r.p_value, 1e-15);
  const auto self = paired_t_test(a, a);
  EXPECT_EQ(self.statistic, 0.0);
  EXPECT_EQ(self.p_value, 1.0);
}

TEST(Stats, WilcoxonMatchesEnumeration) {
  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 3 + static_cast<Index>(rng.index(10));
    Vector a(n), b = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) a(i) = rng.normal(0.3, 1.0);
    const auto r = wilcoxon_signed_rank(a, b);
    EXPECT_NEAR(r.p_value, brute_force_wilcoxon_p(a), 1e-12) << "n=" << n;
    const auto s = wilcoxon_signed_rank(b, a);
    EXPECT_EQ(s.statistic, -r.statistic);
    EXPECT_NEAR(s.p_value, r.p_value, 1e-15);
  }
  Vector d(5);
  d << 1, 2, 3, 4, 5;
  const auto all_pos = wilcoxon_signed_rank(d, Vector::Zero(5));
  EXPECT_EQ(all_pos.statistic, 15.0);
  EXPECT_NEAR(all_pos.p_value, 0.0625, 1e-15);
  EXPECT_EQ(wilcoxon_signed_rank(d, d).p_value, 1.0);
}

TEST(Stats, WilcoxonLargeSampleApproximation) {
  Rng rng(17);
  Vector a(200), b = Vector::Zero(200);
  for (Index i = 0; i < 200; ++i) a(i) = rng.normal();
  const auto r = wilcoxon_signed_rank(a, b);
  EXPECT_GT(r.p_value, 0.0);
  EXPECT_LE(r.p_value, 1.0);
  Vector shifted = a.array() + 1.0;
  EXPECT_LT(wilcoxon_signed_rank(shifted, b).p_value, 1e-10);
}

TEST(Stats, ConfidenceIntervalForThreeFolds) {
  Vector v(3);
  v << 0.5, 0.6, 0.9;
  const auto ci = mean_ci(v);
  const double s = std::sqrt(((v.array() - v.mean()).square().sum()) / 2.0);
  EXPECT_NEAR(ci.half_width, 4.302652729911275 * s / std::sqrt(3.0), 1e-9);
  EXPECT_LE(ci.lower, ci.mean);
  EXPECT_GE(ci.upper, ci.mean);
}

TEST(CrossVal, SelfComparisonAndPartition) {
  data::SyntheticSpec spec;
  spec.rows = 60;
  const auto ds = data::gen_synthetic(spec, 3);
  const auto rep = cross_validate(train::ModelKind::vanilla, ds, 3, tiny_train(), train::ModelKind::vanilla);
  ASSERT_EQ(rep.folds.size(), 3u);
  std::set<Index> seen;
  std::size_t total = 0;
  for (const auto& f : rep.folds) {
    total += f.size();
    seen.insert(f.begin(), f.end());
  }
  EXPECT_EQ(total, 60u);
  EXPECT_EQ(seen.size(), 60u);
  EXPECT_EQ(rep.model_folds.size(), 3u);
  for (const auto& name : kMetricNames) {
    EXPECT_EQ(rep.tests.at(name).t_test.statistic, 0.0);
    EXPECT_EQ(rep.tests.at(name).t_test.p_value, 1.0);
    EXPECT_EQ(rep.tests.at(name).wilcoxon.p_value, 1.0);
    const auto& ci = rep.model_summary.at(name);
    EXPECT_LE(ci.lower, ci.mean);
    EXPECT_GE(ci.upper, ci.mean);
  }
}

TEST(Robustness, FourNoiseSections) {
  Rng rng(18);
  Matrix x(90, 8);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  const Vector y = x.col(0);
  const xai::PredictFn model = [](const Matrix& z) -> Vector { return z.col(0); };
  const auto entries = robustness_suite(model, x, y, 0.1, 4, 1.0);
  ASSERT_EQ(entries.size(), 4u);
  EXPECT_EQ(entries[0].kind, NoiseKind::oversample);
  EXPECT_EQ(entries[0].rows, 99);
  EXPECT_EQ(entries[2].metrics.mse, 0.0);  // bootstrap keeps rows intact
  for (const auto& e : entries) {
    EXPECT_GE(e.distribution.ks, 0.0);
    EXPECT_LE(e.distribution.ks, 1.0);
  }
}

TEST(Profile, OneEntryPerQubitCount) {
  data::SyntheticSpec spec;
  spec.rows = 40;
  const auto ds = data::gen_synthetic(spec, 4);
  std::vector<Index> head(32), tail(8);
  std::iota(head.begin(), head.end(), Index{0});
  std::iota(tail.begin(), tail.end(), Index{32});
  const auto train_set = data::select_rows(ds, head);
  const auto test_set = data::select_rows(ds, tail);
  const auto entries = profile_qubits(train::ModelKind::vanilla, train_set, test_set, tiny_train(),
                                      {.n_min = 1, .n_max = 2, .latency_batch = 16, .latency_runs = 3});
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].n_qubits, 1);
  EXPECT_EQ(entries[1].n_qubits, 2);
  for (const auto& e : entries) {
    EXPECT_GT(e.latency_ms_mean, 0.0);
    EXPECT_GE(e.latency_ms_std, 0.0);
    EXPECT_GT(e.circuit_evaluations, 0u);
  }
  EXPECT_GT(entries[1].parameter_count, entries[0].parameter_count);
}
