#pragma once

#include <cstdint>
#include <string_view>

#include "qadv/types.hpp"

namespace qadv::eval {

enum class NoiseKind { oversample, gaussian, bootstrap, mvnormal };

inline constexpr NoiseKind kAllNoiseKinds[] = {NoiseKind::oversample, NoiseKind::gaussian, NoiseKind::bootstrap,
                                               NoiseKind::mvnormal};

std::string_view to_string(NoiseKind kind) noexcept;
NoiseKind parse_noise_kind(std::string_view text);

struct NoisyData {
  Matrix x;
  Vector y;
};

/// Perturbs a labelled set. oversample appends round(magnitude * N) jittered
/// copies of distinct random rows; gaussian adds per-feature N(0, (m s_j)^2);
/// bootstrap redraws N rows with replacement; mvnormal adds N(0, m^2 S) with
/// S the sample covariance. Targets travel with their rows.
NoisyData inject_noise(NoiseKind kind, const Matrix& x, const Vector& y, double magnitude, std::uint64_t seed);

}  // namespace qadv::eval
