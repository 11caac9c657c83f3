#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "framelab/frame.hpp"

namespace framelab {

// Flip of one dual-basis coefficient: y = x - 2 <x, x_j0> f_j0 where f is
// the dual basis. The flipped point has identical measurement magnitudes on
// a real-coefficient pair, at distance 2 |<x, x_j0>| ||f_j0|| from x.
Vec flip_witness(const FrameSpec& basis, const Vec& x, Eigen::Index j0);

// Shared report type with local.hpp would drag fields around; the flip-rate
// scan returns its own carrier.
struct FlipRateReport {
  std::vector<int> support;               // coefficients with mass
  std::vector<double> witness_distances;  // per prefix level t = 1..m
  double nearest_witness = 0.0;           // full level; +infinity when none
  double lower_bound = 0.0;               // frame constant A
};

// Treats the first t basis vectors as a truncated sub-basis and reports,
// per level, the distance scale 2 |c_j| ||f_j|| of the nearest admissible
// coefficient flip (one that does not fold back onto a phase multiple of
// x). Levels with no admissible flip report +infinity: the truncated
// problem is locally stable at every scale there.
FlipRateReport finite_support_rate(const FrameSpec& basis, const Vec& x);

// A frame together with K+1 orthonormal vectors z_0..z_K and disjoint index
// blocks Omega_0..Omega_K satisfying, for Theta the weighted analysis map,
//   (1) ||Theta_{Omega_j} z_j|| >= 1
//   (2) ||Theta_{Omega_j^c} z_j|| <= 4^(-j)
//   (3) ||Theta_{Omega_i} z_j|| <= (1/2) 4^(-i) for i != j.
struct BlockSystem {
  FrameSpec frame;
  Mat z;                                 // columns z_0..z_K
  std::vector<std::vector<int>> blocks;  // Omega_0..Omega_K
  int levels = 0;                        // K
  double rescale_factor = 1.0;  // weight multiplier applied to reach A >= 1
};

struct ConditionMargins {
  bool ok = false;
  std::vector<double> on_block;    // ||Theta_{Omega_j} z_j||, passes >= 1
  std::vector<double> off_block;   // ||Theta_{Omega_j^c} z_j||, passes <= 4^-j
  std::vector<double> cross_ratio;  // max_{i != j} value / ((1/2) 4^-i), <= 1
};

// Validates block disjointness and z orthonormality, then measures every
// condition with 1e-12 slack. Never throws on a mere threshold miss; ok
// carries the verdict.
ConditionMargins verify_blocks(const BlockSystem& system);

enum class BlockKind { Onb, TwoOnb, Perturbed };
BlockKind parse_block_kind(const std::string& name);

// onb: identity frame of R^N, z_j = e_j, Omega_j = {j}; every condition is
// exact. two_onb: identity plus a seeded signed permutation with
// determinant +1 (a rotation pairing each e_j with one partner), weights
// 1/2; conditions again exact. perturbed: identity frame with z_j a seeded
// perturbation of a bucket anchor, supported inside its own coordinate
// bucket, Omega_j the bucket. Needs N >= 2 (K + 1) and K >= 2. Systems are
// re-verified after construction; failures raise ConstructionFailed.
BlockSystem make_block_system(BlockKind kind, int n, int k_levels,
                              std::uint64_t seed);

// x = sum_j 2^(-j) z_j and the k-th flip y = x - 2^(1-k) z_k.
void build_pair(const BlockSystem& system, int k, Vec& x, Vec& y);

// Tail version echoing a density argument: x = z_0 + sum_{j >= n_tail}
// 2^(-j) z_j, flipped at k >= n_tail. ||x - z_0|| <= 2^(1-n_tail).
void build_tail_pair(const BlockSystem& system, int n_tail, int k, Vec& x,
                     Vec& y);

struct ChainReport {
  int k = 0;
  double dist_sq_lower = 0.0;  // 2^(-2k-1) - 4^(-3k+1) - 4^(-2k+1)
  double gap_sq_upper = 0.0;   // 4^(-3k+1) + 4^(-2k+1)
  double measured_dist_sq = 0.0;
  double b_dist_sq = 0.0;  // B * measured_dist_sq, compared to the lower bound
  double measured_gap_sq = 0.0;
  double ratio = 0.0;       // gap / dist
  double eq51_value = 0.0;  // ||Theta_{Omega_k^c} (x - 2^(-k) z_k)||
  bool eq51_ok = false;     // > 1 required
  bool chain_ok = false;
};

// Certifies one flip pair: the distance stays above the chain's lower bound
// while the magnitude gap stays below its upper bound, forcing the ratio to
// decay like 2^(-k). Requires 2 <= k <= K.
ChainReport verify_chain_pair(const BlockSystem& system, int k, const Vec& x,
                              const Vec& y);

// verify_chain_pair applied to build_pair(system, k).
ChainReport verify_chains(const BlockSystem& system, int k);

}  // namespace framelab
