#include "framelab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/linalg.hpp"
#include "framelab/phase_metric.hpp"
#include "framelab/rng.hpp"

namespace framelab {

double perp_constant(const Vec& x, const Vec& y) {
  if (x.size() != y.size())
    fail(ErrorKind::DimensionMismatch, "vectors differ in dimension");
  double nx2 = x.squaredNorm();
  if (nx2 == 0) fail(ErrorKind::ZeroVector, "projection base is zero");
  Vec resid = y - (inner(y, x) / nx2) * x;
  return resid.norm();
}

WitnessPair cn_basis_witness(const FrameSpec& frame, const Vec& x) {
  if (frame.field != Field::Complex)
    fail(ErrorKind::FieldUnsupported, "construction lives in the complex field");
  if (frame.size() != frame.dim)
    fail(ErrorKind::NotABasis, "need exactly dim vectors");
  check_vector(frame, x, "x");
  if (x.norm() == 0) fail(ErrorKind::ZeroVector, "base point is zero");

  Vec coef(frame.size());
  for (int j = 0; j < frame.size(); ++j)
    coef[j] = inner(x, frame.vectors.col(j));

  // Two largest coefficient magnitudes, smaller index first on ties.
  int a = 0;
  for (int j = 1; j < frame.size(); ++j)
    if (std::abs(coef[j]) > std::abs(coef[a])) a = j;
  int b = a == 0 ? 1 : 0;
  for (int j = 0; j < frame.size(); ++j) {
    if (j == a) continue;
    if (std::abs(coef[j]) > std::abs(coef[b])) b = j;
  }
  if (std::abs(coef[b]) <= 1e-10 * std::abs(coef[a]))
    fail(ErrorKind::HypothesisFail,
         "x must have at least two active coefficients; multiples of a "
         "basis vector are locally stable");

  Mat duals = dual_basis(frame.vectors);
  const Complex i{0.0, 1.0};
  WitnessPair out;
  out.z = x;
  out.direction = i * coef[a] * duals.col(a) - i * coef[b] * duals.col(b);
  out.index_a = a;
  out.index_b = b;
  return out;
}

WitnessPair real_coeff_witness(const FrameSpec& frame, const Vec& x,
                               const Vec& y, std::uint64_t seed) {
  if (frame.field != Field::Complex)
    fail(ErrorKind::FieldUnsupported,
         "construction needs real data embedded in the complex field");
  check_vector(frame, x, "x");
  check_vector(frame, y, "y");

  const int m = frame.size();
  RealVec cx(m), cy(m);
  for (int j = 0; j < m; ++j) {
    Complex a = inner(x, frame.vectors.col(j));
    Complex b = inner(y, frame.vectors.col(j));
    if (std::abs(a.imag()) > 1e-10 * (1.0 + std::abs(a)) ||
        std::abs(b.imag()) > 1e-10 * (1.0 + std::abs(b)))
      fail(ErrorKind::HypothesisFail,
           "coefficients of x and y must be real");
    cx[j] = a.real();
    cy[j] = b.real();
  }
  if (y.norm() == 0 || perp_constant(x, y) <= 1e-12 * y.norm())
    fail(ErrorKind::HypothesisFail, "x and y must be linearly independent");

  double scale_y = cy.cwiseAbs().maxCoeff();
  std::vector<int> massy;
  for (int j = 0; j < m; ++j)
    if (std::abs(cy[j]) > 1e-12 * scale_y) massy.push_back(j);

  // Any multiplier whose loaded coefficients all stay away from zero works;
  // among the integer candidates take the one whose worst coefficient is
  // largest, which keeps the quadratic regime of the base point wide instead
  // of collapsing it onto a nearly-cancelled coefficient.
  auto worst_coeff = [&](double a) {
    double w = std::numeric_limits<double>::infinity();
    for (int j : massy) w = std::min(w, std::abs(a * cx[j] + cy[j]));
    return w;
  };

  double a_found = 0.0;
  double best_w = 0.0;
  for (int k = 1; k <= m + 2; ++k) {
    for (double s : {1.0, -1.0}) {
      double w = worst_coeff(s * k);
      if (w > best_w) {
        best_w = w;
        a_found = s * k;
      }
    }
  }
  if (best_w <= 1e-8) {
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
      double a = rng.uniform(-(m + 3.0), m + 3.0);
      double w = worst_coeff(a);
      if (w > best_w) {
        best_w = w;
        a_found = a;
      }
    }
  }
  if (best_w <= 1e-8)
    fail(ErrorKind::ConstructionFailed,
         "no multiplier kept every loaded coefficient away from zero");

  WitnessPair out;
  out.z = a_found * x + y;
  out.direction = Complex(0.0, 1.0) * y;
  out.shear = a_found;
  return out;
}

WitnessTrace trace_witness(const FrameSpec& frame, const Vec& z,
                           const Vec& direction,
                           const std::vector<double>& alphas) {
  check_vector(frame, z, "z");
  check_vector(frame, direction, "direction");
  if (alphas.empty()) fail(ErrorKind::BadArgument, "empty alpha schedule");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0))
      fail(ErrorKind::BadArgument, "alphas must be positive");
    if (i > 0 && !(alphas[i] < alphas[i - 1]))
      fail(ErrorKind::BadArgument, "alphas must strictly decrease");
  }
  if (z.norm() == 0) fail(ErrorKind::ZeroVector, "base point is zero");
  double c = perp_constant(z, direction);
  if (c <= 1e-12 * direction.norm() || direction.norm() == 0)
    fail(ErrorKind::HypothesisFail,
         "direction is a multiple of the base point; distances vanish");

  WitnessTrace tr;
  tr.alphas = alphas;
  tr.c_lemma = c;
  for (double a : alphas) {
    Vec y = z + a * direction;
    tr.numerators.push_back(magnitude_gap(frame, z, y));
    tr.denominators.push_back(min_phase_dist(z, y).aligned_distance);
    tr.ratios.push_back(tr.numerators.back() / tr.denominators.back());
  }

  std::size_t w = std::min<std::size_t>(8, alphas.size());
  std::vector<double> xa(tr.alphas.end() - w, tr.alphas.end());
  auto slope = [&](const std::vector<double>& v) {
    std::vector<double> ya(v.end() - w, v.end());
    return fit_loglog_slope(xa, ya);
  };
  tr.numerator_order = slope(tr.numerators);
  tr.denominator_order = slope(tr.denominators);
  tr.ratio_order = slope(tr.ratios);
  return tr;
}

namespace {

struct LoadedIndex {
  int j;
  double cz;  // |<z, x_j>|
  double cd;  // |<direction, x_j>|
};

std::vector<LoadedIndex> loaded_indices(const FrameSpec& frame, const Vec& z,
                                        const Vec& direction) {
  const int m = frame.size();
  std::vector<double> cd(m);
  double top = 0.0;
  for (int j = 0; j < m; ++j) {
    cd[j] = std::abs(inner(direction, frame.vectors.col(j)));
    top = std::max(top, cd[j]);
  }
  std::vector<LoadedIndex> out;
  double scale_z = 0.0;
  for (int j = 0; j < m; ++j)
    scale_z = std::max(scale_z, std::abs(inner(z, frame.vectors.col(j))));
  for (int j = 0; j < m; ++j) {
    if (cd[j] <= 1e-12 * top) continue;
    double cz = std::abs(inner(z, frame.vectors.col(j)));
    if (cz <= 1e-13 * std::max(scale_z, 1e-300))
      fail(ErrorKind::HypothesisFail,
           "base coefficient vanishes where the direction has mass");
    out.push_back({j, cz, cd[j]});
  }
  if (out.empty())
    fail(ErrorKind::HypothesisFail, "direction has no mass on the frame");
  return out;
}

}  // namespace

double quadratic_regime_cutoff(const FrameSpec& frame, const Vec& z,
                               const Vec& direction) {
  check_vector(frame, z, "z");
  check_vector(frame, direction, "direction");
  double cutoff = std::numeric_limits<double>::infinity();
  for (const LoadedIndex& li : loaded_indices(frame, z, direction))
    cutoff = std::min(cutoff, li.cz / li.cd);
  return cutoff;
}

QuadraticBoundReport verify_quadratic_bound(const FrameSpec& frame,
                                            const Vec& z, const Vec& direction,
                                            const std::vector<double>& alphas) {
  check_vector(frame, z, "z");
  check_vector(frame, direction, "direction");
  if (alphas.empty()) fail(ErrorKind::BadArgument, "empty alpha schedule");

  std::vector<LoadedIndex> loaded = loaded_indices(frame, z, direction);
  QuadraticBoundReport rep;
  rep.alpha_cutoff = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const LoadedIndex& li : loaded) {
    rep.alpha_cutoff = std::min(rep.alpha_cutoff, li.cz / li.cd);
    sum += frame.weights[li.j] * std::pow(li.cd, 4) / (li.cz * li.cz);
  }
  rep.k = 0.5 * std::sqrt(sum);

  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (double a : alphas) {
    if (!(a > 0)) fail(ErrorKind::BadArgument, "alphas must be positive");
    if (a > rep.alpha_cutoff)
      fail(ErrorKind::RegimeExceeded,
           "alpha exceeds the quadratic regime cutoff " +
               std::to_string(rep.alpha_cutoff));
    double gap = magnitude_gap(frame, z, z + a * direction);
    rep.max_violation = std::max(rep.max_violation, gap - rep.k * a * a);
  }
  return rep;
}

}  // namespace framelab
