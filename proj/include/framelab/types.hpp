#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace framelab {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

enum class Field { Real, Complex };

const char* field_name(Field f);

enum class ErrorKind {
  ParseError,
  IoError,
  InvariantViolation,
  DimensionMismatch,
  FieldMismatch,
  DegeneratePair,
  NotAFrame,
  FieldUnsupported,
  TooLarge,
  DegenerateWitness,
  ZeroVector,
  RadiusExceeded,
  EpsilonOutOfRange,
  TailNotReachable,
  NotABasis,
  HypothesisFail,
  RegimeExceeded,
  ZeroCoefficient,
  OverlappingBlocks,
  ConstructionFailed,
  BadArgument,
};

const char* error_kind_name(ErrorKind k);

// Process exit class for the CLI: 1 for I/O and parse failures, 2 for violated
// preconditions or failed hypotheses.
int error_exit_code(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

// <u,v> is linear in u and conjugate-linear in v.
inline Complex inner(const Vec& u, const Vec& v) { return v.dot(u); }

}  // namespace framelab
