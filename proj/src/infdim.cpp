#include "framelab/infdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "framelab/linalg.hpp"
#include "framelab/phase_metric.hpp"
#include "framelab/rng.hpp"

namespace framelab {

Vec flip_witness(const FrameSpec& basis, const Vec& x, Eigen::Index j0) {
  if (basis.size() != basis.dim)
    fail(ErrorKind::NotABasis, "need exactly dim vectors");
  check_vector(basis, x, "x");
  if (j0 < 0 || j0 >= basis.size())
    fail(ErrorKind::BadArgument, "flip index out of range");

  double scale = 0.0;
  for (int j = 0; j < basis.size(); ++j)
    scale = std::max(scale, std::abs(inner(x, basis.vectors.col(j))));
  Complex c = inner(x, basis.vectors.col(j0));
  if (std::abs(c) <= 1e-12 * std::max(scale, 1e-300))
    fail(ErrorKind::ZeroCoefficient, "coefficient at the flip index vanishes");

  Mat duals = dual_basis(basis.vectors);
  Vec y = x - 2.0 * c * duals.col(j0);
  if (min_phase_dist(x, y).aligned_distance <= 1e-12 * x.norm())
    fail(ErrorKind::DegenerateWitness,
         "x is supported on the flipped coordinate alone");
  return y;
}

FlipRateReport finite_support_rate(const FrameSpec& basis, const Vec& x) {
  if (basis.size() != basis.dim)
    fail(ErrorKind::NotABasis, "need exactly dim vectors");
  check_vector(basis, x, "x");
  if (x.norm() == 0) fail(ErrorKind::ZeroVector, "base point is zero");

  const int m = basis.size();
  Mat duals = dual_basis(basis.vectors);
  std::vector<double> coef(m), dnorm(m);
  double scale = 0.0;
  for (int j = 0; j < m; ++j) {
    coef[j] = std::abs(inner(x, basis.vectors.col(j)));
    dnorm[j] = duals.col(j).norm();
    scale = std::max(scale, coef[j]);
  }

  FlipRateReport rep;
  FrameBounds b = frame_bounds(basis);
  rep.lower_bound = b.lower;
  for (int j = 0; j < m; ++j)
    if (coef[j] > 1e-12 * scale) rep.support.push_back(j);

  // A flip folds back onto a phase multiple of x only when x sits on that
  // single coefficient, so flips are admissible iff the support has company.
  const bool lone = rep.support.size() < 2;
  const double inf = std::numeric_limits<double>::infinity();
  rep.witness_distances.assign(m, inf);
  double best = inf;
  for (int t = 1; t <= m; ++t) {
    int j = t - 1;
    if (!lone && coef[j] > 1e-12 * scale)
      best = std::min(best, 2.0 * coef[j] * dnorm[j]);
    rep.witness_distances[t - 1] = best;
  }
  rep.nearest_witness = best;
  return rep;
}

namespace {

double restricted_theta(const FrameSpec& frame, const std::vector<int>& idx,
                        const Vec& z) {
  double s = 0.0;
  for (int j : idx)
    s += frame.weights[j] * std::norm(inner(z, frame.vectors.col(j)));
  return std::sqrt(s);
}

double complement_theta(const FrameSpec& frame, const std::vector<char>& in,
                        const Vec& z) {
  double s = 0.0;
  for (int j = 0; j < frame.size(); ++j)
    if (!in[j]) s += frame.weights[j] * std::norm(inner(z, frame.vectors.col(j)));
  return std::sqrt(s);
}

std::vector<char> membership(const BlockSystem& sys, int block) {
  std::vector<char> in(sys.frame.size(), 0);
  for (int j : sys.blocks[block]) in[j] = 1;
  return in;
}

}  // namespace

ConditionMargins verify_blocks(const BlockSystem& system) {
  const int nb = static_cast<int>(system.blocks.size());
  if (nb != system.levels + 1 || system.z.cols() != nb)
    fail(ErrorKind::InvariantViolation,
         "need levels + 1 blocks and as many z columns");
  std::vector<char> seen(system.frame.size(), 0);
  for (const auto& blk : system.blocks) {
    for (int j : blk) {
      if (j < 0 || j >= system.frame.size())
        fail(ErrorKind::BadArgument, "block index out of range");
      if (seen[j]) fail(ErrorKind::OverlappingBlocks, "blocks must be disjoint");
      seen[j] = 1;
    }
  }
  for (int a = 0; a < nb; ++a) {
    for (int b = a; b < nb; ++b) {
      Complex g = inner(system.z.col(a), system.z.col(b));
      double want = a == b ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-10)
        fail(ErrorKind::InvariantViolation, "z columns must be orthonormal");
    }
  }

  ConditionMargins m;
  m.on_block.resize(nb);
  m.off_block.resize(nb);
  m.cross_ratio.assign(nb, 0.0);
  m.ok = true;
  for (int j = 0; j < nb; ++j) {
    Vec zj = system.z.col(j);
    m.on_block[j] = restricted_theta(system.frame, system.blocks[j], zj);
    m.off_block[j] = complement_theta(system.frame, membership(system, j), zj);
    if (m.on_block[j] < 1.0 - 1e-12) m.ok = false;
    if (m.off_block[j] > std::pow(4.0, -j) + 1e-12) m.ok = false;
    for (int i = 0; i < nb; ++i) {
      if (i == j) continue;
      double v = restricted_theta(system.frame, system.blocks[i], zj);
      double thr = 0.5 * std::pow(4.0, -i);
      m.cross_ratio[j] = std::max(m.cross_ratio[j], v / thr);
      if (v > thr + 1e-12) m.ok = false;
    }
  }
  return m;
}

BlockKind parse_block_kind(const std::string& name) {
  if (name == "onb") return BlockKind::Onb;
  if (name == "two_onb") return BlockKind::TwoOnb;
  if (name == "perturbed") return BlockKind::Perturbed;
  fail(ErrorKind::BadArgument, "unknown block system kind: " + name);
}

BlockSystem make_block_system(BlockKind kind, int n, int k_levels,
                              std::uint64_t seed) {
  if (k_levels < 2)
    fail(ErrorKind::BadArgument, "need at least 2 levels for chains");
  if (n < 2 * (k_levels + 1))
    fail(ErrorKind::BadArgument, "need n >= 2 * (levels + 1)");

  BlockSystem sys;
  sys.levels = k_levels;
  const int nb = k_levels + 1;

  if (kind == BlockKind::Onb) {
    sys.frame = make_frame(Field::Real, Mat::Identity(n, n), "onb");
    sys.z = Mat::Identity(n, n).leftCols(nb);
    for (int j = 0; j < nb; ++j) sys.blocks.push_back({j});
  } else if (kind == BlockKind::TwoOnb) {
    // Signed permutation with determinant +1: a rotation whose columns pair
    // one-to-one with the standard basis. A generic dense rotation cannot
    // meet the on-block and off-block conditions at once, so the second
    // basis keeps single-coordinate support.
    Rng rng(substream_seed(seed, 0));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.index(static_cast<std::size_t>(i + 1))]);
    std::vector<double> sign(n);
    for (int i = 0; i < n; ++i) sign[i] = rng.uniform(0.0, 1.0) < 0.5 ? 1 : -1;

    std::vector<int> work = perm;
    int transpositions = 0;
    for (int i = 0; i < n; ++i) {
      while (work[i] != i) {
        std::swap(work[i], work[work[i]]);
        ++transpositions;
      }
    }
    double det = transpositions % 2 == 0 ? 1.0 : -1.0;
    for (double s : sign) det *= s;
    if (det < 0) sign[0] = -sign[0];

    Mat vectors(n, 2 * n);
    vectors.leftCols(n) = Mat::Identity(n, n);
    vectors.rightCols(n).setZero();
    for (int i = 0; i < n; ++i)
      vectors(perm[i], n + i) = Complex(sign[i], 0.0);
    sys.frame = make_frame(Field::Real, vectors,
                           RealVec::Constant(2 * n, 0.5), "two_onb");
    sys.z = Mat::Identity(n, n).leftCols(nb);
    std::vector<int> partner(n);
    for (int i = 0; i < n; ++i) partner[perm[i]] = i;
    for (int j = 0; j < nb; ++j) sys.blocks.push_back({j, n + partner[j]});
  } else {
    // Disjoint coordinate buckets keep every condition exact: each z_j is a
    // seeded unit perturbation of its bucket anchor, supported only there.
    const int bs = n / nb;
    sys.frame = make_frame(Field::Real, Mat::Identity(n, n), "perturbed");
    sys.z = Mat::Zero(n, nb);
    Rng rng(substream_seed(seed, 1));
    for (int j = 0; j < nb; ++j) {
      RealVec g(bs);
      for (int t = 0; t < bs; ++t) g[t] = rng.gaussian();
      g.normalize();
      RealVec v = RealVec::Zero(bs);
      v[0] = 1.0;
      v += 0.3 * g;
      v.normalize();
      std::vector<int> blk(bs);
      for (int t = 0; t < bs; ++t) {
        blk[t] = j * bs + t;
        sys.z(j * bs + t, j) = Complex(v[t], 0.0);
      }
      sys.blocks.push_back(std::move(blk));
    }
  }

  FrameBounds b = frame_bounds(sys.frame);
  if (b.lower < 1.0 - 1e-12) {
    if (b.lower <= 0)
      fail(ErrorKind::ConstructionFailed, "construction lost the frame bound");
    sys.rescale_factor = 1.0 / b.lower;
    sys.frame.weights *= sys.rescale_factor;
  }

  ConditionMargins m = verify_blocks(sys);
  if (!m.ok)
    fail(ErrorKind::ConstructionFailed,
         "constructed system misses a block condition");
  return sys;
}

void build_pair(const BlockSystem& system, int k, Vec& x, Vec& y) {
  if (k < 0 || k > system.levels)
    fail(ErrorKind::BadArgument, "flip level out of range");
  x = Vec::Zero(system.frame.dim);
  for (int j = 0; j <= system.levels; ++j)
    x += std::ldexp(1.0, -j) * system.z.col(j);
  y = x - 2.0 * std::ldexp(1.0, -k) * system.z.col(k);
}

void build_tail_pair(const BlockSystem& system, int n_tail, int k, Vec& x,
                     Vec& y) {
  if (n_tail < 1 || n_tail > system.levels)
    fail(ErrorKind::BadArgument, "tail start out of range");
  if (k < n_tail || k > system.levels)
    fail(ErrorKind::BadArgument, "flip level must lie in the tail");
  x = system.z.col(0);
  for (int j = n_tail; j <= system.levels; ++j)
    x += std::ldexp(1.0, -j) * system.z.col(j);
  y = x - 2.0 * std::ldexp(1.0, -k) * system.z.col(k);
}

ChainReport verify_chain_pair(const BlockSystem& system, int k, const Vec& x,
                              const Vec& y) {
  if (k < 2 || k > system.levels)
    fail(ErrorKind::BadArgument, "chain certificates need 2 <= k <= levels");

  ChainReport rep;
  rep.k = k;
  rep.dist_sq_lower = std::ldexp(1.0, -2 * k - 1) -
                      std::pow(4.0, -3 * k + 1) - std::pow(4.0, -2 * k + 1);
  rep.gap_sq_upper =
      std::pow(4.0, -3 * k + 1) + std::pow(4.0, -2 * k + 1);

  double d = min_phase_dist(x, y).aligned_distance;
  rep.measured_dist_sq = d * d;
  FrameBounds b = frame_bounds(system.frame);
  rep.b_dist_sq = b.upper * rep.measured_dist_sq;
  double g = magnitude_gap(system.frame, x, y);
  rep.measured_gap_sq = g * g;
  rep.ratio = d > 0 ? g / d : std::numeric_limits<double>::infinity();

  Vec core = x - std::ldexp(1.0, -k) * system.z.col(k);
  rep.eq51_value =
      complement_theta(system.frame, membership(system, k), core);
  rep.eq51_ok = rep.eq51_value > 1.0;

  rep.chain_ok = rep.b_dist_sq >= rep.dist_sq_lower - 1e-12 &&
                 rep.measured_gap_sq <= rep.gap_sq_upper + 1e-12;
  return rep;
}

ChainReport verify_chains(const BlockSystem& system, int k) {
  Vec x, y;
  build_pair(system, k, x, y);
  return verify_chain_pair(system, k, x, y);
}

}  // namespace framelab
