// Error taxonomy shared by all aadcurve components.
#pragma once

#include <stdexcept>
#include <string>

namespace aadcurve {

enum class ErrorKind {
  LengthMismatch,
  DegenerateWindow,
  OutOfDomain,
  InvalidWindow,
  TooFewSamples,
  ZeroVariance,
  NormConstraint,
  EmptySet,
  GridMismatch,
  InsufficientPool,
  MissingPool,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace aadcurve
