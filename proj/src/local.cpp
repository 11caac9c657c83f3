#include "framelab/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/linalg.hpp"
#include "framelab/phase_metric.hpp"
#include "framelab/rng.hpp"

namespace framelab {

LocalReport local_radius(const FrameSpec& frame, const Vec& x,
                         double zero_tol) {
  check_vector(frame, x, "x");
  double nx = x.norm();
  if (nx == 0) fail(ErrorKind::ZeroVector, "base point is zero");

  LocalReport rep;
  double beta = std::numeric_limits<double>::infinity();
  for (int j = 0; j < frame.size(); ++j) {
    double nj = frame.vectors.col(j).norm();
    if (frame.weights[j] <= 0 || nj == 0) continue;
    double coef = std::abs(inner(x, frame.vectors.col(j)));
    if (coef <= zero_tol * nx * nj) continue;
    rep.support.push_back(j);
    beta = std::min(beta, coef / nj);
  }
  if (rep.support.empty())
    fail(ErrorKind::InvariantViolation,
         "no measured vector sees x; the family cannot be a frame");
  rep.beta = beta;
  FrameBounds b = frame_bounds(frame);
  rep.lower_bound = b.lower;
  rep.constant = b.lower > 0 ? 1.0 / std::sqrt(b.lower)
                             : std::numeric_limits<double>::infinity();
  return rep;
}

LocalBoundCheck local_bound_check(const FrameSpec& frame, const Vec& x,
                                  const Vec& y) {
  if (frame.field != Field::Real)
    fail(ErrorKind::FieldUnsupported, "sign-based bound is for real frames");
  check_vector(frame, y, "y");
  LocalReport rep = local_radius(frame, x);
  if (rep.lower_bound <= 0)
    fail(ErrorKind::NotAFrame, "family has no positive lower frame bound");

  LocalBoundCheck out;
  out.beta = rep.beta;
  if ((x - y).norm() >= rep.beta)
    fail(ErrorKind::RadiusExceeded,
         "y lies outside the separation ball of x");

  out.dist = min_phase_dist(x, y).aligned_distance;
  out.gap = magnitude_gap(frame, x, y);
  out.slack = rep.constant * out.gap - out.dist;
  out.holds = out.slack >= -1e-9;

  out.signs_ok = true;
  for (int j : rep.support) {
    double cx = inner(x, frame.vectors.col(j)).real();
    double cy = inner(y, frame.vectors.col(j)).real();
    if (cx * cy <= 0) out.signs_ok = false;
  }
  return out;
}

namespace {

double restricted_sigma(const FrameSpec& frame, const std::vector<int>& rows) {
  if (rows.empty()) return 0.0;
  Mat block(static_cast<Eigen::Index>(rows.size()), frame.dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    block.row(i) =
        std::sqrt(frame.weights[rows[i]]) * frame.vectors.col(rows[i]).adjoint();
  return largest_singular_value(block);
}

}  // namespace

TailReport tail_norm(const FrameSpec& frame, const Vec& x, double alpha) {
  check_vector(frame, x, "x");
  if (!(alpha > 0)) fail(ErrorKind::BadArgument, "alpha must be positive");
  TailReport rep;
  rep.alpha = alpha;
  std::vector<int> outside;
  for (int j = 0; j < frame.size(); ++j) {
    double nj = frame.vectors.col(j).norm();
    double coef = std::abs(inner(x, frame.vectors.col(j)));
    if (coef >= alpha * nj)
      rep.omega.push_back(j);
    else
      outside.push_back(j);
  }
  rep.tail = restricted_sigma(frame, outside);
  return rep;
}

TailRadius choose_tail_radius(const FrameSpec& frame, const Vec& x,
                              double epsilon, int samples,
                              std::uint64_t seed) {
  LocalReport base = local_radius(frame, x);
  if (base.lower_bound <= 0)
    fail(ErrorKind::NotAFrame, "family has no positive lower frame bound");
  if (!(epsilon > 0) || !(epsilon < base.lower_bound))
    fail(ErrorKind::EpsilonOutOfRange,
         "epsilon must lie strictly between 0 and the lower frame bound");

  // Rows whose coefficient is exactly zero stay in the tail at every alpha.
  std::vector<int> floor_rows;
  double top = 0.0;
  for (int j = 0; j < frame.size(); ++j) {
    double nj = frame.vectors.col(j).norm();
    double coef = std::abs(inner(x, frame.vectors.col(j)));
    if (nj > 0) top = std::max(top, coef / nj);
    if (nj > 0 && coef == 0) floor_rows.push_back(j);
  }
  double floor_tail = restricted_sigma(frame, floor_rows);
  if (floor_tail * floor_tail >= epsilon)
    fail(ErrorKind::TailNotReachable,
         "vanishing-coefficient rows alone exceed the tail target");
  if (top <= 0)
    fail(ErrorKind::TailNotReachable, "x has no nonvanishing coefficient");

  TailRadius out;
  double alpha = top;
  TailReport rep = tail_norm(frame, x, alpha);
  int guard = 0;
  while (rep.tail * rep.tail >= epsilon) {
    alpha *= 0.5;
    rep = tail_norm(frame, x, alpha);
    if (++guard > 200)
      fail(ErrorKind::ConstructionFailed, "tail target not reached");
  }
  out.beta_alpha = alpha;
  out.report = rep;

  if (samples > 0) {
    if (frame.field != Field::Real)
      fail(ErrorKind::FieldUnsupported,
           "sampled guarantee check needs the real field");
    // Inside the open ball of radius alpha, every row kept in omega holds
    // its sign automatically, so gap^2 >= (A - eps) * ||x - y||^2 there.
    double worst = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    const double a_eps = base.lower_bound - epsilon;
    for (int s = 0; s < samples; ++s) {
      Vec d = rng.unit_vector(frame.dim, Field::Real);
      double r = rng.uniform(0.0, 1.0) * alpha * 0.999;
      Vec y = x + r * d;
      double g = magnitude_gap(frame, x, y);
      worst = std::min(worst, g * g - a_eps * r * r);
    }
    out.sampled_margin = worst;
    out.n_sampled = samples;
  }
  return out;
}

LocalReport local_ratio_profile(const FrameSpec& frame, const Vec& x,
                                int n_dirs, int n_radii, std::uint64_t seed,
                                const std::vector<Vec>& extra_dirs,
                                int threads) {
  if (n_dirs < 1) fail(ErrorKind::BadArgument, "need at least one direction");
  if (n_radii < 1) fail(ErrorKind::BadArgument, "need at least one radius");
  LocalReport rep = local_radius(frame, x);

  std::vector<Vec> dirs(n_dirs);
  for (int i = 0; i < n_dirs; ++i) {
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(i)));
    dirs[i] = rng.unit_vector(frame.dim, frame.field);
  }
  for (const Vec& e : extra_dirs) {
    check_vector(frame, e, "direction");
    double ne = e.norm();
    if (ne <= 1e-12)
      fail(ErrorKind::ZeroVector, "extra direction is numerically zero");
    dirs.push_back(e / ne);
  }

  rep.radii.resize(n_radii);
  for (int k = 0; k < n_radii; ++k)
    rep.radii[k] = std::ldexp(rep.beta / 2, -k);

  const std::size_t nd = dirs.size();
  std::vector<double> ratios(static_cast<std::size_t>(n_radii) * nd,
                             std::numeric_limits<double>::quiet_NaN());
  parallel_for(ratios.size(), threads, [&](std::size_t idx) {
    int k = static_cast<int>(idx / nd);
    const Vec& d = dirs[idx % nd];
    Vec y = x + rep.radii[k] * d;
    PhaseAlignment al = min_phase_dist(x, y);
    if (al.aligned_distance <= kTolDist) return;  // direction folds into x
    ratios[idx] = magnitude_gap(frame, x, y) / al.aligned_distance;
  });

  rep.min_ratio.assign(n_radii, std::numeric_limits<double>::quiet_NaN());
  double overall = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_radii; ++k) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nd; ++i) {
      double v = ratios[static_cast<std::size_t>(k) * nd + i];
      if (std::isfinite(v)) m = std::min(m, v);
    }
    if (std::isfinite(m)) {
      rep.min_ratio[k] = m;
      overall = std::min(overall, m);
    }
  }
  rep.trend.assign(std::max(0, n_radii - 1),
                   std::numeric_limits<double>::quiet_NaN());
  for (int k = 0; k + 1 < n_radii; ++k) {
    if (std::isfinite(rep.min_ratio[k]) && std::isfinite(rep.min_ratio[k + 1]) &&
        rep.min_ratio[k] > 0)
      rep.trend[k] = rep.min_ratio[k + 1] / rep.min_ratio[k];
  }
  rep.empirical_local_inf = overall;
  return rep;
}

}  // namespace framelab
