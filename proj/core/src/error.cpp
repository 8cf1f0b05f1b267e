#include "qadv/error.hpp"

namespace qadv {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::AllRowsDropped: return "AllRowsDropped";
    case Errc::BinTooSmall: return "BinTooSmall";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::RowOutOfRange: return "RowOutOfRange";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::TraceMismatch: return "TraceMismatch";
    case Errc::ParamCountMismatch: return "ParamCountMismatch";
    case Errc::QubitOutOfRange: return "QubitOutOfRange";
    case Errc::EmptyTraining: return "EmptyTraining";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SingularFit: return "SingularFit";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::TooFewCalibration: return "TooFewCalibration";
    case Errc::SingleCluster: return "SingleCluster";
    case Errc::Config: return "Config";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

void raise(Errc code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::Config:
    case Errc::InvalidArgument:
    case Errc::QubitOutOfRange:
      return 2;
    case Errc::MissingColumn:
    case Errc::MalformedRow:
    case Errc::EmptyFile:
    case Errc::AllRowsDropped:
    case Errc::BinTooSmall:
    case Errc::TooFewSamples:
    case Errc::RowOutOfRange:
    case Errc::DimensionMismatch:
    case Errc::ShapeMismatch:
    case Errc::EmptyTraining:
    case Errc::Io:
      return 3;
    case Errc::NonFiniteLoss:
    case Errc::SingularFit:
    case Errc::ZeroVariance:
    case Errc::TooFewCalibration:
    case Errc::SingleCluster:
      return 4;
    case Errc::VersionMismatch:
      return 5;
    default:
      return 1;
  }
}

}  // namespace qadv
