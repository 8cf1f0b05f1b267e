#include "qadv/data/preprocess.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <tuple>

#include "qadv/error.hpp"

namespace qadv::data {

MinMaxScaler MinMaxScaler::fit(const Matrix& x) {
  MinMaxScaler s;
  if (x.rows() == 0) return identity(x.cols());
  s.per_column_min = x.colwise().minCoeff().transpose();
  s.per_column_max = x.colwise().maxCoeff().transpose();
  return s;
}

MinMaxScaler MinMaxScaler::identity(Index dims) {
  return {Vector::Zero(dims), Vector::Ones(dims)};
}

Matrix MinMaxScaler::transform(const Matrix& x) const {
  if (x.cols() != dims()) raise(Errc::DimensionMismatch, "scaler expects " + std::to_string(dims()) + " columns");
  Matrix out(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double span = per_column_max(j) - per_column_min(j);
    if (span > 0.0) {
      out.col(j) = (x.col(j).array() - per_column_min(j)) / span;
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

Matrix MinMaxScaler::inverse(const Matrix& scaled) const {
  if (scaled.cols() != dims()) raise(Errc::DimensionMismatch, "scaler expects " + std::to_string(dims()) + " columns");
  Matrix out(scaled.rows(), scaled.cols());
  for (Index j = 0; j < scaled.cols(); ++j) {
    const double span = per_column_max(j) - per_column_min(j);
    out.col(j) = scaled.col(j).array() * span + per_column_min(j);
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) raise(Errc::InvalidArgument, "quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

struct ImputedRow {
  const CatalogRow* source;
  double target;
  std::array<double, 8> features;
};

// Exact bitwise identity on every column.
auto row_key(const ImputedRow& r) {
  std::array<std::uint64_t, 9> bits{};
  bits[0] = std::bit_cast<std::uint64_t>(r.target);
  for (std::size_t f = 0; f < 8; ++f) bits[f + 1] = std::bit_cast<std::uint64_t>(r.features[f]);
  return std::make_tuple(r.source->id, static_cast<int>(r.source->morph), bits);
}

}  // namespace

PreprocessResult preprocess(const RawCatalog& catalog, const PreprocessConfig& cfg) {
  if (catalog.empty()) raise(Errc::EmptyFile, "catalog has no rows");
  PreprocessReport report;
  report.input_rows = catalog.size();

  std::vector<ImputedRow> rows;
  rows.reserve(catalog.size());
  for (const auto& src : catalog.rows) {
    ImputedRow r{&src, 0.0, {}};
    std::size_t missing = 0;
    if (src.logsigmae) {
      r.target = *src.logsigmae;
    } else {
      ++missing;
    }
    for (std::size_t f = 0; f < 8; ++f) {
      if (src.features[f]) {
        r.features[f] = *src.features[f];
      } else {
        ++missing;
      }
    }
    report.imputed_cells += missing;
    if (missing > 0) ++report.rows_with_imputation;
    rows.push_back(r);
  }

  if (cfg.dedupe) {
    std::set<decltype(row_key(rows.front()))> seen;
    std::vector<ImputedRow> unique;
    unique.reserve(rows.size());
    for (const auto& r : rows) {
      if (seen.insert(row_key(r)).second) unique.push_back(r);
    }
    report.duplicates_removed = rows.size() - unique.size();
    rows = std::move(unique);
  }

  if (cfg.filter_outliers && !rows.empty()) {
    std::array<double, 8> lo{};
    std::array<double, 8> hi{};
    for (std::size_t f = 0; f < 8; ++f) {
      std::vector<double> col;
      col.reserve(rows.size());
      for (const auto& r : rows) col.push_back(r.features[f]);
      const double q1 = quantile(col, 0.25);
      const double q3 = quantile(col, 0.75);
      const double iqr = q3 - q1;
      lo[f] = q1 - cfg.iqr_multiplier * iqr;
      hi[f] = q3 + cfg.iqr_multiplier * iqr;
    }
    const auto before = rows.size();
    std::erase_if(rows, [&](const ImputedRow& r) {
      for (std::size_t f = 0; f < 8; ++f)
        if (r.features[f] < lo[f] || r.features[f] > hi[f]) return true;
      return false;
    });
    report.outliers_removed = before - rows.size();
  }

  if (rows.empty()) raise(Errc::AllRowsDropped, "preprocessing removed every row");

  const auto n = static_cast<Index>(rows.size());
  Matrix x(n, 8);
  Vector y(n);
  for (Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    y(i) = r.target;
    for (Index f = 0; f < 8; ++f) x(i, f) = r.features[static_cast<std::size_t>(f)];
    if (r.source->morph == Morph::E) {
      ++report.morph_e;
    } else {
      ++report.morph_s;
    }
  }
  report.output_rows = rows.size();

  PreprocessResult out;
  out.scaler = MinMaxScaler::fit(x);
  out.features.values = out.scaler.transform(x);
  for (const auto name : kFeatureColumns) out.features.column_names.emplace_back(name);
  out.target.raw_min = y.minCoeff();
  out.target.raw_max = y.maxCoeff();
  const double span = out.target.raw_max - out.target.raw_min;
  if (span > 0.0) {
    out.target.values = (y.array() - out.target.raw_min) / span;
  } else {
    out.target.values = Vector::Zero(n);
    out.target.raw_max = out.target.raw_min + 1.0;
  }
  out.report = report;
  return out;
}

}  // namespace qadv::data
