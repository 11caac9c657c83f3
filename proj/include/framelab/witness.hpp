#pragma once

#include <cstdint>
#include <vector>

#include "framelab/frame.hpp"

namespace framelab {

// Norm of the component of y orthogonal to x. Positive exactly when the
// pair is linearly independent; it lower-bounds min-phase distances along
// the segment z + alpha * y via dist >= |alpha| * perp_constant(z, y).
double perp_constant(const Vec& x, const Vec& y);

struct WitnessPair {
  Vec z;          // base point of the trace
  Vec direction;  // perturbation direction
  int index_a = -1;   // basis mode: the two coefficients carrying the
  int index_b = -1;   // opposite phase twists
  double shear = 0.0;  // shifted-pair mode: the accepted multiplier a
};

// For a basis of C^n and a point x with at least two active coefficients:
// twists the two largest coefficients by opposite imaginary factors. The
// resulting direction leaves all measured magnitudes unchanged to second
// order while moving x at first order, so gap/dist ratios collapse
// linearly along it.
WitnessPair cn_basis_witness(const FrameSpec& frame, const Vec& x);

// For a complex frame whose coefficients on x and y are all real: picks a
// real multiplier a (small integers first, then seeded draws) such that
// z = a x + y has no vanishing coefficient where y has mass, and pairs z
// with the direction i y. Requires x, y linearly independent.
WitnessPair real_coeff_witness(const FrameSpec& frame, const Vec& x,
                               const Vec& y, std::uint64_t seed = 0);

struct WitnessTrace {
  std::vector<double> alphas;
  std::vector<double> numerators;    // magnitude gap at z + alpha * direction
  std::vector<double> denominators;  // min-phase distance
  std::vector<double> ratios;
  double numerator_order = 0.0;    // log-log slopes over the last window
  double denominator_order = 0.0;
  double ratio_order = 0.0;
  double c_lemma = 0.0;  // perp_constant(z, direction)
};

// Evaluates gap and distance along z + alpha * direction for strictly
// decreasing positive alphas and fits decay orders on the final window
// (up to 8 points). Denominators satisfy
// denominators[i] >= alphas[i] * c_lemma - 1e-12.
WitnessTrace trace_witness(const FrameSpec& frame, const Vec& z,
                           const Vec& direction,
                           const std::vector<double>& alphas);

// Largest alpha with alpha * |<direction, x_j>| <= |<z, x_j>| on every
// index where the direction has mass: the regime in which the quadratic
// gap bound below applies.
double quadratic_regime_cutoff(const FrameSpec& frame, const Vec& z,
                               const Vec& direction);

// Verifies gap(z, z + alpha * direction) <= k * alpha^2 with
// k = (1/2) * sqrt(sum_j mu_j |<direction,x_j>|^4 / |<z,x_j>|^2) over the
// indices where the direction has mass. Valid for directions that twist
// coefficient phases (both constructors above); alphas beyond the regime
// cutoff raise RegimeExceeded.
struct QuadraticBoundReport {
  double k = 0.0;
  double alpha_cutoff = 0.0;
  double max_violation = 0.0;  // max of gap - k * alpha^2; <= 0 up to roundoff
};

QuadraticBoundReport verify_quadratic_bound(const FrameSpec& frame,
                                            const Vec& z, const Vec& direction,
                                            const std::vector<double>& alphas);

}  // namespace framelab
