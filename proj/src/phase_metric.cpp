#include "framelab/phase_metric.hpp"

#include <cmath>

namespace framelab {

PhaseAlignment min_phase_dist(const Vec& x, const Vec& y) {
  if (x.size() != y.size())
    fail(ErrorKind::DimensionMismatch,
         "pair has dimensions " + std::to_string(x.size()) + " and " +
             std::to_string(y.size()));
  const Complex p = inner(x, y);
  const double ab = std::abs(p);
  PhaseAlignment out;
  out.lambda = ab > 0.0 ? p / ab : Complex(1.0, 0.0);
  // The minimizer is lambda = phase(<x,y>); measure the distance on the
  // aligned difference itself. The closed form sqrt(|x|^2 + |y|^2 - 2|<x,y>|)
  // loses the value entirely once it falls below the roundoff of the squared
  // norms, while the difference vector stays accurate for nearby pairs.
  out.aligned_distance = (x - out.lambda * y).norm();
  return out;
}

Vec phase_align(const Vec& x, const Vec& y) {
  return min_phase_dist(x, y).lambda * y;
}

double magnitude_gap(const FrameSpec& frame, const Vec& x, const Vec& y) {
  return (magnitudes(frame, x).values - magnitudes(frame, y).values).norm();
}

PsiValue psi(const FrameSpec& frame, const Vec& x, const Vec& y,
             double tol_dist) {
  const PhaseAlignment d = min_phase_dist(x, y);
  if (d.aligned_distance <= tol_dist)
    fail(ErrorKind::DegeneratePair,
         "pair is a phase multiple within tolerance " + std::to_string(tol_dist));
  PsiValue v;
  v.numerator = magnitude_gap(frame, x, y);
  v.denominator = d.aligned_distance;
  v.ratio = v.numerator / v.denominator;
  return v;
}

}  // namespace framelab
