#pragma once

#include "framelab/frame.hpp"

namespace framelab {

// Distance to the closest phase multiple: aligned_distance minimizes
// ||x - lambda*y|| over unimodular lambda. For real data lambda comes out
// as +-1; the convention for <x,y> = 0 is lambda = 1.
struct PhaseAlignment {
  Complex lambda = Complex(1.0, 0.0);
  double aligned_distance = 0.0;
};

PhaseAlignment min_phase_dist(const Vec& x, const Vec& y);

// y multiplied by the minimizing lambda, so that <x, y'> is real and >= 0.
Vec phase_align(const Vec& x, const Vec& y);

// || |analyze(x)| - |analyze(y)| ||, the measurement-side distance.
double magnitude_gap(const FrameSpec& frame, const Vec& x, const Vec& y);

// Stability quotient magnitude_gap / min_phase_dist. The pair must be
// genuinely distinct: aligned_distance > tol_dist.
struct PsiValue {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

inline constexpr double kTolDist = 1e-12;

PsiValue psi(const FrameSpec& frame, const Vec& x, const Vec& y,
             double tol_dist = kTolDist);

}  // namespace framelab
