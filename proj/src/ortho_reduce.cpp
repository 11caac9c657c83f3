#include "framelab/ortho_reduce.hpp"

#include <algorithm>
#include <cmath>

namespace framelab {

namespace {

void require_aligned(const Vec& x, const Vec& y) {
  const Complex p = inner(x, y);
  const double scale = std::max(1e-300, x.norm() * y.norm());
  if (std::abs(p.imag()) > 1e-10 * scale || p.real() < -1e-10 * scale)
    fail(ErrorKind::BadArgument,
         "pair is not phase-aligned: <x,y> must be real and nonnegative");
}

}  // namespace

double reduction_parameter(const Vec& x, const Vec& y_aligned) {
  require_aligned(x, y_aligned);
  const Vec s = x + y_aligned;
  const double s2 = s.squaredNorm();
  if (s2 <= 1e-24 * std::max(1.0, x.squaredNorm() + y_aligned.squaredNorm()))
    fail(ErrorKind::DegeneratePair, "x + y is numerically zero");
  const double p = std::max(0.0, inner(x, y_aligned).real());
  // 2<x,y> <= ||x||^2 + ||y||^2 makes the discriminant nonnegative in exact
  // arithmetic; clamp it against roundoff near x = y.
  const double disc = std::max(0.0, 1.0 - 4.0 * p / s2);
  const double r = 0.5 * (1.0 - std::sqrt(disc));
  return std::clamp(r, 0.0, 0.5);
}

OrthoPair reduce_pair(const FrameSpec& frame, const Vec& x, const Vec& y,
                      double tol_dist) {
  check_vector(frame, x, "x");
  check_vector(frame, y, "y");
  const PhaseAlignment d = min_phase_dist(x, y);
  if (d.aligned_distance <= tol_dist)
    fail(ErrorKind::DegeneratePair, "pair is a phase multiple; nothing to reduce");

  OrthoPair out;
  out.psi_before = psi(frame, x, y, tol_dist).ratio;

  const Vec ya = d.lambda * y;
  const Vec s = x + ya;
  out.R = reduction_parameter(x, ya);
  const Vec u = x - out.R * s;
  const Vec v = ya - out.R * s;

  const double nu = u.norm();
  const double nv = v.norm();
  const double scale = std::max(x.norm(), y.norm());
  if (std::max(nu, nv) <= 1e-12 * std::max(1.0, scale))
    fail(ErrorKind::DegeneratePair, "shifted pair is numerically zero");

  // Scale by the larger member so the unit one leads. The comparison gets a
  // roundoff-width band so an exact-tie pair keeps u in front regardless of
  // how the last bits land; the band keeps ||y_o|| within 1 + 1e-13.
  if (nu >= nv * (1.0 - 1e-13)) {
    out.x_o = u / nu;
    out.y_o = v / nu;
  } else {
    out.x_o = v / nv;
    out.y_o = u / nv;
  }

  out.psi_after = psi(frame, out.x_o, out.y_o, tol_dist).ratio;
  return out;
}

GapMonotoneReport coordinate_gap_monotone(const FrameSpec& frame, const Vec& x,
                                          const Vec& y_aligned,
                                          int grid_points) {
  check_vector(frame, x, "x");
  check_vector(frame, y_aligned, "y");
  require_aligned(x, y_aligned);
  if (grid_points < 2)
    fail(ErrorKind::BadArgument, "grid needs at least two points");

  GapMonotoneReport rep;
  rep.R = reduction_parameter(x, y_aligned);
  rep.min_drop_at_R = std::numeric_limits<double>::infinity();

  const Eigen::Index m = frame.size();
  for (Eigen::Index j = 0; j < m; ++j) {
    const Complex a = inner(x, frame.vectors.col(j));
    const Complex b = inner(y_aligned, frame.vectors.col(j));
    const Complex sj = a + b;
    const auto f = [&](double r) {
      return std::abs(std::abs(a - r * sj) - std::abs(b - r * sj));
    };
    double prev = f(0.0);
    for (int i = 1; i < grid_points; ++i) {
      const double r = 0.5 * static_cast<double>(i) /
                       static_cast<double>(grid_points - 1);
      const double cur = f(r);
      rep.max_upward_step = std::max(rep.max_upward_step, cur - prev);
      prev = cur;
    }
    rep.min_drop_at_R = std::min(rep.min_drop_at_R, f(0.0) - f(rep.R));
    rep.max_abs_at_half = std::max(rep.max_abs_at_half, f(0.5));
  }
  return rep;
}

}  // namespace framelab
