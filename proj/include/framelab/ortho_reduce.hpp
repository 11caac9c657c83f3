#pragma once

#include <vector>

#include "framelab/phase_metric.hpp"

namespace framelab {

// Orthogonalized replacement pair: ||x_o|| = 1, ||y_o|| <= 1, <x_o,y_o> = 0,
// same magnitude gap geometry with a never-larger stability quotient.
struct OrthoPair {
  Vec x_o;
  Vec y_o;
  double R = 0.0;
  double psi_before = 0.0;
  double psi_after = 0.0;
};

// Smaller root of ||s||^2 r^2 - ||s||^2 r + <x,y> = 0 with s = x + y.
// Requires an aligned pair (<x,y> real, >= 0); the root lies in [0, 1/2] and
// the discriminant is clamped at zero against roundoff.
double reduction_parameter(const Vec& x, const Vec& y_aligned);

// Aligns the pair, shifts both members by -R(x+y), and scales by the larger
// of the two shifted norms. DegeneratePair when the input is a phase multiple
// or the shifted pair is numerically zero.
OrthoPair reduce_pair(const FrameSpec& frame, const Vec& x, const Vec& y,
                      double tol_dist = kTolDist);

// Per-coordinate gap profile f_j(r) = | |<x-rs, x_j>| - |<y-rs, x_j>| | on a
// grid over [0, 1/2], for an aligned pair. f_j is nonincreasing and
// f_j(1/2) = 0; the report carries the worst measured deviation.
struct GapMonotoneReport {
  double R = 0.0;
  // Largest f_j(r_{i+1}) - f_j(r_i) over all coordinates and grid steps.
  double max_upward_step = 0.0;
  // Smallest f_j(0) - f_j(R) over all coordinates.
  double min_drop_at_R = 0.0;
  double max_abs_at_half = 0.0;
};

GapMonotoneReport coordinate_gap_monotone(const FrameSpec& frame, const Vec& x,
                                          const Vec& y_aligned,
                                          int grid_points = 101);

}  // namespace framelab
