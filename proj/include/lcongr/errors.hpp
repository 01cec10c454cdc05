#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcongr {

enum class ErrorKind {
  BadReduction,
  Overflow,
  BadPrime,
  NoSuchCharacter,
  OrderMismatch,
  NotLambdaIntegral,
  NotReal,
  RecognitionFailed,
  RankPositive,
  Inconclusive,
  ConductorClash,
  BadCusp,
  SlowConvergence,
  NotIntegral,
  NotInvertible,
  NotUnit,
  Mismatch,
  BoundViolated,
  HypothesisFailed,
  HypothesisUnverified,
  MissingImageData,
  AllZero,
  GcdDivisible,
  ParseError,
  ValidationError,
  CorruptCache,
  UnknownLabel,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI,
// the python bindings) can map it to an exit code or exception class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lcongr
