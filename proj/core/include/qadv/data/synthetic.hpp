#pragma once

#include <cstdint>

#include "qadv/data/frame.hpp"

namespace qadv::data {

/// Linear-plus-noise stand-in for the galaxy catalog: uniform features on
/// [0,1]^8, target = beta.x + N(0, sigma^2), min-max rescaled to [0,1].
struct SyntheticSpec {
  Index rows = 2000;
  Vector beta = default_beta();
  double noise_sigma = 0.05;

  /// Enclosed-mass-dominated coefficients mimicking the virial relation.
  static Vector default_beta();
};

Dataset gen_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace qadv::data
