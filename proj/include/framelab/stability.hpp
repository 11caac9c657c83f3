#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "framelab/ortho_reduce.hpp"

namespace framelab {

// Point of the compact search domain X: ||x|| = 1, <x,y> = 0, ||y|| <= 1.
// On X the stability quotient has denominator (1 + ||y||^2)^(1/2), and the
// infimum of the quotient over all distinct pairs equals its infimum over X.
struct CompactPoint {
  Vec x;
  Vec y;
};

struct SearchBudget {
  int n_starts = 64;
  // Dimension-2 frames only: a coarse deterministic chart sweep of this
  // density seeds one extra start. Ignored elsewhere; 0 disables.
  int grid_density = 0;
  int refine_iters = 40;  // descent passes per step level
  int threads = 1;
};

inline constexpr double kTolZero = 1e-6;
inline constexpr double kTolInconclusive = 1e-4;

enum class Verdict { Stable, Unstable, Inconclusive };
const char* verdict_name(Verdict v);

// Estimates below kTolZero read unstable, above kTolInconclusive stable. In
// between, an oracle value decides when present; otherwise inconclusive.
Verdict classify_stability(double inf_psi, std::optional<double> oracle);

struct StabilityReport {
  double inf_psi_estimate = 0.0;
  // 1 / inf_psi_estimate; +infinity when the estimate is at or below kTolZero.
  double c_estimate = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  CompactPoint argmin;
  int n_starts = 0;
  long long n_evals = 0;
  std::uint64_t seed = 0;
  std::optional<double> oracle_value;
};

// Multistart projected perturbation descent over X. Starts draw x uniformly
// from the sphere, a unit w orthogonal to x, and rho in [0,1] with y = rho*w;
// refinement is derivative-free coordinate descent with a halving step
// schedule. Deterministic for a fixed seed, independent of thread count.
StabilityReport estimate_stability(const FrameSpec& frame,
                                   const SearchBudget& budget,
                                   std::uint64_t seed);

// Dense chart sweep for dimension-2 frames, refined by recursive window
// zoom around the best cell. Real chart: x = (cos t, sin t), w the rotated
// complement, y = rho*w, t over [0, pi), rho over [0, 1]. Complex chart:
// x = (cos a, sin a e^(ib)), w = (-sin a, cos a e^(ib)), y = rho e^(ic) w,
// a over [0, pi/2], b, c over [0, 2pi) (the c axis is redundant for the
// quotient by phase invariance and doubles as an invariance check).
double oracle_stability_dim2(const FrameSpec& frame, int grid_density);

// Exhaustive complement-property scan over splits of the measured (positive
// weight, nonzero) vectors; real field only, at most 22 vectors. The family
// fails exactly when some split leaves both sides short of full rank.
struct ComplementReport {
  bool holds = true;
  std::vector<int> violating_subset;  // empty when holds
  int rank_subset = 0;
  int rank_complement = 0;
};

ComplementReport complement_property(const FrameSpec& frame);

// For a failing split, combines unit normals of the two deficient spans into
// p = u + v, q = u - v with equal measurement magnitudes, then reduces the
// pair. The result has magnitude gap at roundoff level and unit distance.
OrthoPair pr_failure_witness(const FrameSpec& frame,
                             const ComplementReport& report);

}  // namespace framelab
