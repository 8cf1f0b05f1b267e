#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qadv {

/// Failure kinds raised across the toolkit. Each maps onto a CLI exit-code
/// category (see `exit_code_for`).
enum class Errc {
  // data
  MissingColumn,
  MalformedRow,
  EmptyFile,
  AllRowsDropped,
  BinTooSmall,
  TooFewSamples,
  RowOutOfRange,
  // shapes / contracts
  DimensionMismatch,
  ShapeMismatch,
  TraceMismatch,
  ParamCountMismatch,
  QubitOutOfRange,
  EmptyTraining,
  InvalidArgument,
  // numerics
  SingularFit,
  NonFiniteLoss,
  ZeroVariance,
  TooFewCalibration,
  SingleCluster,
  // config / persistence
  Config,
  VersionMismatch,
  Io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

/// Pinned process exit codes: 2 config, 3 data, 4 numeric, 5 version, 1 other.
int exit_code_for(Errc code) noexcept;

}  // namespace qadv
