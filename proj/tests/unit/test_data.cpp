#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qadv/data/catalog.hpp"
#include "qadv/data/pca.hpp"
#include "qadv/data/preprocess.hpp"
#include "qadv/data/split.hpp"
#include "qadv/data/synthetic.hpp"
#include "qadv/error.hpp"
#include "qadv/rng.hpp"

using namespace qadv;
using namespace qadv::data;

namespace {

const char* kHeader = "id,morph,logsigmae,logM12,logRe,logAge,ZH,logML,DlogAge,DZH,DlogML\n";

RawCatalog parse(const std::string& text) {
  std::istringstream in(text);
  return parse_catalog(in);
}

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no qadv::Error thrown";
  return Errc::Io;
}

// Rows whose i-th numeric cells are all `base + i`, so no feature is an outlier.
std::string ramp_csv(int rows) {
  std::string text = kHeader;
  for (int i = 0; i < rows; ++i) {
    text += "g" + std::to_string(i) + (i % 2 ? ",S" : ",E");
    for (int c = 0; c < 9; ++c) text += "," + std::to_string(1.0 + i + 0.1 * c);
    text += "\n";
  }
  return text;
}

}  // namespace

TEST(Catalog, ParsesValidRows) {
  const auto cat = parse(ramp_csv(3));
  ASSERT_EQ(cat.size(), 3u);
  EXPECT_EQ(cat.rows[1].id, "g1");
  EXPECT_EQ(cat.rows[1].morph, Morph::S);
  EXPECT_DOUBLE_EQ(*cat.rows[2].logsigmae, 3.0);
  EXPECT_DOUBLE_EQ(*cat.rows[0].features[0], 1.1);
}

TEST(Catalog, HeaderOrderIsIrrelevant) {
  const auto cat = parse("DlogML,DZH,DlogAge,logML,ZH,logAge,logRe,logM12,logsigmae,morph,id\n"
                         "8,7,6,5,4,3,2,1,0.5,E,a\n");
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_DOUBLE_EQ(*cat.rows[0].logsigmae, 0.5);
  for (std::size_t f = 0; f < 8; ++f) EXPECT_DOUBLE_EQ(*cat.rows[0].features[f], static_cast<double>(f + 1));
}

TEST(Catalog, MissingColumnIsNamed) {
  try {
    parse("id,morph,logsigmae,logM12,logAge,ZH,logML,DlogAge,DZH,DlogML\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingColumn);
    EXPECT_NE(std::string(e.what()).find("logRe"), std::string::npos);
  }
}

TEST(Catalog, UnparseableCellIsFlaggedMissing) {
  auto text = std::string(kHeader) + "a,E,2.1,1,2,abc,4,5,6,7,8\n";
  const auto cat = parse(text);
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_FALSE(cat.rows[0].features[2].has_value());
  EXPECT_TRUE(cat.rows[0].features[1].has_value());
}

TEST(Catalog, StructuralErrors) {
  EXPECT_EQ(error_code([] { parse(""); }), Errc::EmptyFile);
  EXPECT_EQ(error_code([] { parse(std::string(kHeader) + "a,E,1,2\n"); }), Errc::MalformedRow);
  EXPECT_EQ(error_code([] { parse(std::string(kHeader) + "a,X,1,2,3,4,5,6,7,8,9\n"); }), Errc::MalformedRow);
}

TEST(Preprocess, MinMaxScalesColumns) {
  auto text = std::string(kHeader);
  for (int v : {2, 4, 6}) {
    const auto s = std::to_string(v);
    text += "r" + s + ",E," + s + "," + s + "," + s + "," + s + "," + s + "," + s + "," + s + "," + s + "," + s + "\n";
  }
  const auto res = preprocess(parse(text));
  ASSERT_EQ(res.features.rows(), 3);
  for (Index j = 0; j < 8; ++j) {
    EXPECT_DOUBLE_EQ(res.features.values(0, j), 0.0);
    EXPECT_DOUBLE_EQ(res.features.values(1, j), 0.5);
    EXPECT_DOUBLE_EQ(res.features.values(2, j), 1.0);
  }
  EXPECT_DOUBLE_EQ(res.target.values(1), 0.5);
  EXPECT_DOUBLE_EQ(res.target.raw_min, 2.0);
  EXPECT_DOUBLE_EQ(res.target.raw_max, 6.0);
  EXPECT_DOUBLE_EQ(res.target.unscale(0.5), 4.0);
}

TEST(Preprocess, MissingValueImputedAsZero) {
  // ZH of row a is missing; the other rows carry 2 and 4, so 0 scales to 0
  // and 2 to 0.5 exactly when the imputed value is zero.
  auto text = std::string(kHeader) + "a,E,1,1,1,1,,1,1,1,1\n" + "b,E,2,2,2,2,2,2,2,2,2\n" + "c,S,3,3,3,3,4,3,3,3,3\n";
  const auto res = preprocess(parse(text), {.dedupe = true, .filter_outliers = false});
  EXPECT_EQ(res.report.imputed_cells, 1u);
  EXPECT_EQ(res.report.rows_with_imputation, 1u);
  const auto zh = res.features.values.col(3);
  EXPECT_DOUBLE_EQ(zh(0), 0.0);
  EXPECT_DOUBLE_EQ(zh(1), 0.5);
  EXPECT_DOUBLE_EQ(zh(2), 1.0);
}

TEST(Preprocess, DuplicateRowsCollapse) {
  auto text = ramp_csv(4);
  text += "g1,S,2,2.1,2.2,2.3,2.4,2.5,2.6,2.7,2.8\n";
  const auto cat = parse(text);
  EXPECT_EQ(cat.size(), 5u);
  const auto res = preprocess(cat);
  EXPECT_EQ(res.report.duplicates_removed, 1u);
  EXPECT_EQ(res.features.rows(), 4);
}

TEST(Preprocess, IqrFenceDropsOutliers) {
  auto text = ramp_csv(20);
  text += "far,E,5,1000,2,3,4,5,6,7,8\n";
  const auto res = preprocess(parse(text));
  EXPECT_EQ(res.report.outliers_removed, 1u);
  EXPECT_EQ(res.report.output_rows, 20u);
  EXPECT_TRUE((res.features.values.array() >= 0.0).all() && (res.features.values.array() <= 1.0).all());
}

TEST(Preprocess, ConstantColumnMapsToZeroAndRoundTrips) {
  Matrix x(3, 2);
  x << 1, 5, 2, 5, 4, 5;
  const auto scaler = MinMaxScaler::fit(x);
  const Matrix s = scaler.transform(x);
  EXPECT_TRUE(s.col(1).isZero());
  const Matrix back = scaler.inverse(s);
  EXPECT_LT((back.col(0) - x.col(0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Preprocess, ScalingRoundTripOnRandomData) {
  Rng rng(3);
  Matrix x(50, 8);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal(2.0, 5.0);
  const auto scaler = MinMaxScaler::fit(x);
  EXPECT_LT((scaler.inverse(scaler.transform(x)) - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Preprocess, QuantileInterpolatesLinearly) {
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile({7}, 0.9), 7.0);
}

TEST(Pca, PointsOnALine) {
  Matrix x(5, 2);
  for (Index i = 0; i < 5; ++i) x.row(i) << i, 2.0 * i;
  const auto basis = fit_pca(x, 2);
  EXPECT_NEAR(basis.explained_variance_ratio(0), 1.0, 1e-10);
  EXPECT_NEAR(basis.explained_variance_ratio(1), 0.0, 1e-10);
  const Matrix p = project(basis, x);
  EXPECT_LT(p.col(1).cwiseAbs().maxCoeff(), 1e-10);
  // Largest-magnitude entry of each component is positive.
  EXPECT_GT(basis.components(0, 1), 0.0);
}

TEST(Pca, IsotropicCloudSharesVarianceEvenly) {
  Rng rng(11);
  const Index d = 4;
  Matrix x(10000, d);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
  const auto basis = fit_pca(x, d);
  for (Index k = 0; k < d; ++k) EXPECT_NEAR(basis.explained_variance_ratio(k), 1.0 / d, 0.02);
}

TEST(Pca, RandomMatricesGiveOrthonormalOrderedBases) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + static_cast<Index>(rng.index(7));
    const Index n = d + 2 + static_cast<Index>(rng.index(30));
    Matrix x(n, d);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal() * (1.0 + static_cast<double>(i % d));
    const Index k = 1 + static_cast<Index>(rng.index(static_cast<std::uint64_t>(d)));
    const auto basis = fit_pca(x, k);
    ASSERT_EQ(basis.components.rows(), k);
    EXPECT_LT((basis.components * basis.components.transpose() - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(),
              1e-10);
    for (Index i = 1; i < k; ++i)
      EXPECT_LE(basis.explained_variance_ratio(i), basis.explained_variance_ratio(i - 1) + 1e-15);
    EXPECT_LE(basis.explained_variance_ratio.sum(), 1.0 + 1e-10);
    EXPECT_GE(basis.explained_variance_ratio.minCoeff(), 0.0);
  }
}

TEST(Pca, ProjectionIdentities) {
  Rng rng(9);
  Matrix x(40, 8);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = rng.uniform();
  const auto full = fit_pca(x, 8);
  EXPECT_LT((reconstruct(full, project(full, x)) - x).cwiseAbs().maxCoeff(), 1e-9);
  const Matrix mean_row = full.mean.transpose();
  EXPECT_LT(project(full, mean_row).cwiseAbs().maxCoeff(), 1e-12);
  const auto four = fit_pca(x, 4);
  EXPECT_EQ(four.components.rows(), 4);
  EXPECT_EQ(four.components.cols(), 8);
  EXPECT_EQ(project(four, x).cols(), 4);
  EXPECT_EQ(error_code([&] { (void)project(four, Matrix(3, 5)); }), Errc::DimensionMismatch);
}

TEST(Split, SingleBinArithmetic) {
  Vector y = Vector::LinSpaced(100, 0.0, 1.0);
  const auto s = split_stratified(y, 0.2, 1, 1);
  EXPECT_EQ(s.test.size(), 20u);
  EXPECT_EQ(s.train.size(), 80u);
}

TEST(Split, PerBinCountsAndDeterminism) {
  Rng rng(4);
  Vector y(100);
  for (Index i = 0; i < 100; ++i) y(i) = rng.uniform();
  const auto labels = quantile_bins(y, 3);
  const auto a = split_stratified(y, 0.2, 3, 99);
  const auto b = split_stratified(y, 0.2, 3, 99);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.train, b.train);
  for (int bin = 0; bin < 3; ++bin) {
    const auto size = std::count(labels.begin(), labels.end(), bin);
    const auto in_test = std::count_if(a.test.begin(), a.test.end(), [&](Index i) { return labels[i] == bin; });
    EXPECT_EQ(in_test, std::lround(0.2 * static_cast<double>(size)));
  }
  // 30/40/30 bins would yield 6/8/6 under the same rounding rule.
  EXPECT_EQ(std::lround(0.2 * 30), 6);
  EXPECT_EQ(std::lround(0.2 * 40), 8);
}

TEST(Split, QuantileBinsAreRightClosed) {
  Vector y(6);
  y << 1, 2, 3, 4, 5, 6;
  const auto labels = quantile_bins(y, 3);
  EXPECT_EQ(labels, (std::vector<int>{0, 0, 1, 1, 2, 2}));
}

TEST(Split, PartitionWithValidation) {
  Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 12 + static_cast<Index>(rng.index(300));
    Vector y(n);
    for (Index i = 0; i < n; ++i) y(i) = rng.uniform();
    const auto s = split_stratified(y, 0.2, 3, trial, 0.1);
    std::vector<Index> all;
    all.insert(all.end(), s.train.begin(), s.train.end());
    all.insert(all.end(), s.test.begin(), s.test.end());
    all.insert(all.end(), s.validation.begin(), s.validation.end());
    std::sort(all.begin(), all.end());
    std::vector<Index> expected(static_cast<std::size_t>(n));
    std::iota(expected.begin(), expected.end(), 0);
    EXPECT_EQ(all, expected);
  }
}

TEST(Split, TinyBinIsRejected) {
  Vector y(3);
  y << 0.1, 0.2, 0.3;
  EXPECT_EQ(error_code([&] { split_stratified(y, 0.2, 3, 1); }), Errc::BinTooSmall);
}

TEST(KFold, EqualAndNearEqualSizes) {
  Vector y9 = Vector::LinSpaced(9, 0, 1);
  const auto f9 = kfold(9, 3, y9, 1);
  for (const auto& f : f9.folds) EXPECT_EQ(f.size(), 3u);
  Vector y10 = Vector::LinSpaced(10, 0, 1);
  std::multiset<std::size_t> sizes;
  for (const auto& f : kfold(10, 3, y10, 1).folds) sizes.insert(f.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{3, 3, 4}));
  EXPECT_EQ(error_code([&] { kfold(2, 3, Vector::Zero(2), 1); }), Errc::TooFewSamples);
}

TEST(KFold, RandomSizesPartitionExactly) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + static_cast<int>(rng.index(5));
    const Index n = k + static_cast<Index>(rng.index(200));
    Vector y(n);
    for (Index i = 0; i < n; ++i) y(i) = rng.uniform();
    const auto s = kfold(n, k, y, trial);
    ASSERT_EQ(s.folds.size(), static_cast<std::size_t>(k));
    std::vector<int> hits(static_cast<std::size_t>(n), 0);
    std::size_t lo = s.folds[0].size(), hi = lo;
    for (const auto& f : s.folds) {
      lo = std::min(lo, f.size());
      hi = std::max(hi, f.size());
      for (Index i : f) ++hits[static_cast<std::size_t>(i)];
    }
    EXPECT_LE(hi - lo, 1u);
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    EXPECT_EQ(kfold(n, k, y, trial).folds, s.folds);
  }
}

TEST(Synthetic, NoiselessSingleFeatureIsMonotone) {
  SyntheticSpec spec;
  spec.rows = 200;
  spec.beta = Vector::Zero(8);
  spec.beta(0) = 1.0;
  spec.noise_sigma = 0.0;
  const auto ds = gen_synthetic(spec, 3);
  std::vector<Index> by_x(200), by_y(200);
  std::iota(by_x.begin(), by_x.end(), 0);
  by_y = by_x;
  std::sort(by_x.begin(), by_x.end(), [&](Index a, Index b) { return ds.features.values(a, 0) < ds.features.values(b, 0); });
  std::sort(by_y.begin(), by_y.end(), [&](Index a, Index b) { return ds.target.values(a) < ds.target.values(b); });
  EXPECT_EQ(by_x, by_y);
}

TEST(Synthetic, EmptyAndDeterministic) {
  SyntheticSpec empty;
  empty.rows = 0;
  const auto e = gen_synthetic(empty, 1);
  EXPECT_EQ(e.features.rows(), 0);
  EXPECT_EQ(e.target.size(), 0);

  const auto a = gen_synthetic({}, 7);
  const auto b = gen_synthetic({}, 7);
  EXPECT_EQ(a.features.values, b.features.values);
  EXPECT_EQ(a.target.values, b.target.values);
  EXPECT_EQ(a.features.rows(), 2000);
  EXPECT_GE(a.target.values.minCoeff(), 0.0);
  EXPECT_LE(a.target.values.maxCoeff(), 1.0);
  EXPECT_EQ(a.features.column_names.size(), 8u);
}

TEST(Synthetic, LinearFitConfirmsDominantFeature) {
  const auto ds = gen_synthetic({}, 21);
  Matrix design(ds.features.rows(), 9);
  design << ds.features.values, Vector::Ones(ds.features.rows());
  const Vector coef = design.colPivHouseholderQr().solve(ds.target.values);
  // Variance share of feature 0 in the fitted linear signal.
  double total = 0.0;
  for (Index j = 0; j < 8; ++j) total += coef(j) * coef(j);
  EXPECT_GT(coef(0) * coef(0) / total, 0.9);
}
