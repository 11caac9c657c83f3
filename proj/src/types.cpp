#include "framelab/types.hpp"

namespace framelab {

const char* field_name(Field f) {
  return f == Field::Real ? "real" : "complex";
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::FieldUnsupported: return "FieldUnsupported";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DegenerateWitness: return "DegenerateWitness";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::RadiusExceeded: return "RadiusExceeded";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::TailNotReachable: return "TailNotReachable";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::HypothesisFail: return "HypothesisFail";
    case ErrorKind::RegimeExceeded: return "RegimeExceeded";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::BadArgument: return "BadArgument";
  }
  return "Unknown";
}

int error_exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError:
    case ErrorKind::BadArgument:
      return 1;
    default:
      return 2;
  }
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(error_kind_name(kind)) + ": " + message);
}

}  // namespace framelab
