#include "aadcurve/errors.hpp"

namespace aadcurve {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::LengthMismatch:
      return "LengthMismatch";
    case ErrorKind::DegenerateWindow:
      return "DegenerateWindow";
    case ErrorKind::OutOfDomain:
      return "OutOfDomain";
    case ErrorKind::InvalidWindow:
      return "InvalidWindow";
    case ErrorKind::TooFewSamples:
      return "TooFewSamples";
    case ErrorKind::ZeroVariance:
      return "ZeroVariance";
    case ErrorKind::NormConstraint:
      return "NormConstraint";
    case ErrorKind::EmptySet:
      return "EmptySet";
    case ErrorKind::GridMismatch:
      return "GridMismatch";
    case ErrorKind::InsufficientPool:
      return "InsufficientPool";
    case ErrorKind::MissingPool:
      return "MissingPool";
    case ErrorKind::ParseError:
      return "ParseError";
  }
  return "Unknown";
}

}  // namespace aadcurve
