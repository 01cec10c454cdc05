#include "lcongr/errors.hpp"

namespace lcongr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::NoSuchCharacter: return "NoSuchCharacter";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NotLambdaIntegral: return "NotLambdaIntegral";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::RecognitionFailed: return "RecognitionFailed";
    case ErrorKind::RankPositive: return "RankPositive";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::ConductorClash: return "ConductorClash";
    case ErrorKind::BadCusp: return "BadCusp";
    case ErrorKind::SlowConvergence: return "SlowConvergence";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::HypothesisUnverified: return "HypothesisUnverified";
    case ErrorKind::MissingImageData: return "MissingImageData";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::GcdDivisible: return "GcdDivisible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::CorruptCache: return "CorruptCache";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace lcongr
