#pragma once

#include <string>

#include "framelab/types.hpp"

namespace framelab {

// Weighted finite frame of R^n or C^n. Column j of `vectors` is the frame
// vector x_j with weight mu_j >= 0. A continuous frame enters as a finite
// family whose weights carry the quadrature measure.
struct FrameSpec {
  Field field = Field::Real;
  Eigen::Index dim = 0;       // n
  Mat vectors;                // n x m
  RealVec weights;            // m, nonnegative
  std::string label;

  Eigen::Index size() const { return vectors.cols(); }
};

// Spectral bounds of the weighted frame operator S = sum_j mu_j x_j x_j^*.
// lower = 0 is a valid report; spans() tells whether the family is a frame.
struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B

  bool spans(double rel_tol = 1e-12) const {
    return lower > rel_tol * std::max(1.0, upper);
  }
};

struct MagnitudeMeasurement {
  RealVec values;  // sqrt(mu_j) * |<x, x_j>| per index
};

// Validates invariants (finite entries, matching sizes, nonnegative weights,
// real-field data has zero imaginary parts) and returns the assembled frame.
FrameSpec make_frame(Field field, const Mat& vectors, const RealVec& weights,
                     std::string label = "");

// Unit-weight convenience overload.
FrameSpec make_frame(Field field, const Mat& vectors, std::string label = "");

// Checks that x is a valid input vector for the frame: matching dimension,
// finite entries, and zero imaginary parts when the frame is real.
void check_vector(const FrameSpec& frame, const Vec& x,
                  const char* what = "vector");

// Weighted analysis coefficients sqrt(mu_j) <x, x_j>.
Vec analyze(const FrameSpec& frame, const Vec& x);

MagnitudeMeasurement magnitudes(const FrameSpec& frame, const Vec& x);

FrameBounds frame_bounds(const FrameSpec& frame);

// Change of measure: rescales every nonzero frame vector to unit norm and
// folds ||x_j||^2 into the weight. Magnitude measurements are unchanged.
FrameSpec normalize_vectors(const FrameSpec& frame);

}  // namespace framelab
