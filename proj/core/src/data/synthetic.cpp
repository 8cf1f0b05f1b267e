#include "qadv/data/synthetic.hpp"

#include "qadv/data/catalog.hpp"
#include "qadv/error.hpp"
#include "qadv/rng.hpp"

namespace qadv::data {

Vector SyntheticSpec::default_beta() {
  Vector beta(8);
  beta << 0.8, 0.1, 0.02, 0.05, 0.02, 0.005, 0.003, 0.002;
  return beta;
}

Dataset gen_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  if (spec.beta.size() != 8) raise(Errc::InvalidArgument, "synthetic beta must have 8 entries");
  if (spec.rows < 0) raise(Errc::InvalidArgument, "synthetic row count must be >= 0");
  Rng rng(seed);
  Dataset ds;
  for (const auto name : kFeatureColumns) ds.features.column_names.emplace_back(name);
  ds.features.values.resize(spec.rows, 8);
  Vector raw(spec.rows);
  for (Index i = 0; i < spec.rows; ++i) {
    for (Index j = 0; j < 8; ++j) ds.features.values(i, j) = rng.uniform();
    raw(i) = ds.features.values.row(i).dot(spec.beta) + spec.noise_sigma * rng.normal();
  }
  if (spec.rows == 0) {
    ds.target.values = Vector(0);
    return ds;
  }
  ds.target.raw_min = raw.minCoeff();
  ds.target.raw_max = raw.maxCoeff();
  const double span = ds.target.raw_max - ds.target.raw_min;
  if (span > 0.0) {
    ds.target.values = (raw.array() - ds.target.raw_min) / span;
  } else {
    ds.target.values = Vector::Zero(spec.rows);
    ds.target.raw_max = ds.target.raw_min + 1.0;
  }
  return ds;
}

}  // namespace qadv::data
