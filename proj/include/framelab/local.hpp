#pragma once

#include <cstdint>
#include <vector>

#include "framelab/frame.hpp"

namespace framelab {

// Shared carrier for the local-behavior probes. Ratio profiles fill the
// radii/min_ratio/trend block; flip-rate scans fill witness_distances and
// nearest_witness and leave the profile block empty.
struct LocalReport {
  double beta = 0.0;     // separation radius of the base point
  double lower_bound = 0.0;  // frame constant A
  double constant = 0.0;     // A^(-1/2); +infinity when A = 0
  std::vector<int> support;  // indices with a nonvanishing coefficient
  std::vector<double> radii;
  std::vector<double> min_ratio;  // per radius, min of gap/distance
  std::vector<double> trend;      // min_ratio[k+1] / min_ratio[k]
  double empirical_local_inf = 0.0;
  std::vector<double> witness_distances;  // per truncation level 1..m
  double nearest_witness = 0.0;           // +infinity when no flip admissible
};

// Computes beta = min over the support of |<x, x_j>| / ||x_j||: inside the
// open ball of that radius around x, no measured coefficient changes sign.
LocalReport local_radius(const FrameSpec& frame, const Vec& x,
                         double zero_tol = 1e-12);

// Checks dist(x, y) <= A^(-1/2) * gap(x, y) + 1e-9 for a pair inside the
// separation ball, real field. Also reports whether every supported
// coefficient kept its sign.
struct LocalBoundCheck {
  bool holds = false;
  bool signs_ok = false;
  double slack = 0.0;  // constant * gap - dist; holds when >= -1e-9
  double dist = 0.0;
  double gap = 0.0;
  double beta = 0.0;
};

LocalBoundCheck local_bound_check(const FrameSpec& frame, const Vec& x,
                                  const Vec& y);

// Rows outside Omega_alpha = { j : |<x, x_j>| >= alpha * ||x_j|| }, stacked
// as sqrt(mu_j) x_j^*; tail is the largest singular value of that block.
struct TailReport {
  double alpha = 0.0;
  std::vector<int> omega;
  double tail = 0.0;
};

TailReport tail_norm(const FrameSpec& frame, const Vec& x, double alpha);

// Halves alpha from the largest coefficient ratio until tail^2 < epsilon,
// which requires 0 < epsilon < A. Rows whose coefficient vanishes exactly
// never enter Omega_alpha; when those alone carry tail^2 >= epsilon the
// target is unreachable for this finite family and the search refuses.
// With samples > 0 (real field) the returned guarantee margin is the worst
// of gap(x,y)^2 - (A - epsilon) * dist(x,y)^2 over sampled y in the ball of
// radius beta_alpha with preserved signs; nonnegative up to roundoff.
struct TailRadius {
  double beta_alpha = 0.0;
  TailReport report;
  double sampled_margin = 0.0;
  int n_sampled = 0;
};

TailRadius choose_tail_radius(const FrameSpec& frame, const Vec& x,
                              double epsilon, int samples = 0,
                              std::uint64_t seed = 0);

// Ratio gap/dist along random unit directions at dyadic radii
// r_k = 2^(-k) * beta/2. Directions are drawn per index from seed
// substreams, so results do not depend on the thread count. Extra
// directions (witness candidates) are appended after normalization.
LocalReport local_ratio_profile(const FrameSpec& frame, const Vec& x,
                                int n_dirs, int n_radii, std::uint64_t seed,
                                const std::vector<Vec>& extra_dirs = {},
                                int threads = 1);

}  // namespace framelab
