#include "framelab/frame.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace framelab {

namespace {

bool all_finite(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

}  // namespace

FrameSpec make_frame(Field field, const Mat& vectors, const RealVec& weights,
                     std::string label) {
  if (vectors.rows() <= 0)
    fail(ErrorKind::InvariantViolation, "frame dimension must be positive");
  if (vectors.cols() <= 0)
    fail(ErrorKind::InvariantViolation, "frame must contain vectors");
  if (weights.size() != vectors.cols())
    fail(ErrorKind::InvariantViolation,
         "weight count " + std::to_string(weights.size()) +
             " does not match vector count " + std::to_string(vectors.cols()));
  if (!all_finite(vectors))
    fail(ErrorKind::InvariantViolation, "frame vectors must be finite");
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    if (!std::isfinite(weights(j)) || weights(j) < 0.0)
      fail(ErrorKind::InvariantViolation,
           "weight " + std::to_string(j) + " is negative or not finite");
  }
  if (field == Field::Real) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j)
      for (Eigen::Index i = 0; i < vectors.rows(); ++i)
        if (vectors(i, j).imag() != 0.0)
          fail(ErrorKind::FieldMismatch,
               "real frame has a nonzero imaginary part in vector " +
                   std::to_string(j));
  }
  FrameSpec f;
  f.field = field;
  f.dim = vectors.rows();
  f.vectors = vectors;
  f.weights = weights;
  f.label = std::move(label);
  return f;
}

FrameSpec make_frame(Field field, const Mat& vectors, std::string label) {
  return make_frame(field, vectors, RealVec::Ones(vectors.cols()),
                    std::move(label));
}

void check_vector(const FrameSpec& frame, const Vec& x, const char* what) {
  if (x.size() != frame.dim)
    fail(ErrorKind::DimensionMismatch,
         std::string(what) + " has dimension " + std::to_string(x.size()) +
             ", frame has dimension " + std::to_string(frame.dim));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i).real()) || !std::isfinite(x(i).imag()))
      fail(ErrorKind::BadArgument, std::string(what) + " has non-finite entries");
    if (frame.field == Field::Real && x(i).imag() != 0.0)
      fail(ErrorKind::FieldMismatch,
           std::string(what) + " has a nonzero imaginary part against a real frame");
  }
}

Vec analyze(const FrameSpec& frame, const Vec& x) {
  check_vector(frame, x, "analysis input");
  Vec coef(frame.size());
  for (Eigen::Index j = 0; j < frame.size(); ++j)
    coef(j) = std::sqrt(frame.weights(j)) * inner(x, frame.vectors.col(j));
  return coef;
}

MagnitudeMeasurement magnitudes(const FrameSpec& frame, const Vec& x) {
  const Vec coef = analyze(frame, x);
  MagnitudeMeasurement m;
  m.values = coef.cwiseAbs();
  return m;
}

FrameBounds frame_bounds(const FrameSpec& frame) {
  Mat s = Mat::Zero(frame.dim, frame.dim);
  for (Eigen::Index j = 0; j < frame.size(); ++j) {
    const Vec xj = frame.vectors.col(j);
    s.noalias() += frame.weights(j) * xj * xj.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
  FrameBounds b;
  b.lower = std::max(0.0, es.eigenvalues().minCoeff());
  b.upper = std::max(0.0, es.eigenvalues().maxCoeff());
  return b;
}

FrameSpec normalize_vectors(const FrameSpec& frame) {
  FrameSpec out = frame;
  for (Eigen::Index j = 0; j < frame.size(); ++j) {
    const double norm = frame.vectors.col(j).norm();
    if (norm > 0.0) {
      out.vectors.col(j) /= norm;
      out.weights(j) = frame.weights(j) * norm * norm;
    } else {
      out.weights(j) = 0.0;
    }
  }
  return out;
}

}  // namespace framelab
