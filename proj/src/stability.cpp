#include "framelab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "framelab/linalg.hpp"
#include "framelab/phase_metric.hpp"
#include "framelab/rng.hpp"

namespace framelab {

namespace {

// Quotient restricted to the chart (x unit, w unit orthogonal to x, y =
// rho*w): numerator ||mags(x) - rho*mags(w)||, denominator sqrt(1 + rho^2).
double chart_value(const FrameSpec& frame, const Vec& x, const Vec& w,
                   double rho) {
  RealVec mx = magnitudes(frame, x).values;
  RealVec mw = magnitudes(frame, w).values;
  return (mx - rho * mw).norm() / std::sqrt(1.0 + rho * rho);
}

// Renormalizes x, re-orthogonalizes w against it, clamps rho. False when the
// trial collapsed (x near zero, or w nearly parallel to x).
bool project_chart(Vec& x, Vec& w, double& rho) {
  double nx = x.norm();
  if (nx < 1e-12) return false;
  x /= nx;
  if (x.size() > 1) {
    w -= inner(w, x) * x;
    double nw = w.norm();
    if (nw < 1e-12) return false;
    w /= nw;
  } else {
    w.setZero();
    rho = 0.0;
  }
  rho = std::clamp(rho, 0.0, 1.0);
  return true;
}

struct RefineResult {
  Vec x;
  Vec w;
  double rho = 0.0;
  double value = 0.0;
  long long evals = 0;
};

void bump_coord(Vec& v, Field field, int c, double delta) {
  if (field == Field::Real)
    v[c] += delta;
  else
    v[c / 2] += (c % 2 == 0) ? Complex(delta, 0) : Complex(0, delta);
}

// Derivative-free descent with a halving step schedule. Each pass sweeps the
// chart coordinates, then fires a few seeded joint probes (these catch
// valleys that run diagonal to the axes, where every single-coordinate move
// goes uphill), then repeats the pass displacement once as a pattern move.
// Levels run unconditionally down to 1e-9; below that the halving continues
// only while a level still improves, bottoming out at 1e-12. The deep levels
// are what pins exact zeros (basis frames) to 1e-8 accuracy or better.
RefineResult refine(const FrameSpec& frame, Vec x, Vec w, double rho,
                    const SearchBudget& budget, std::uint64_t poll_seed) {
  const Field field = frame.field;
  const int per_vec =
      static_cast<int>(frame.dim) * (field == Field::Complex ? 2 : 1);
  const bool has_w = frame.dim > 1;
  const int n_coords = per_vec + (has_w ? per_vec : 0) + 1;

  RefineResult best;
  best.x = x;
  best.w = w;
  best.rho = rho;
  best.value = chart_value(frame, x, w, rho);
  best.evals = 1;

  Rng poll(poll_seed);
  const int passes = std::max(1, budget.refine_iters);
  for (double step = 0.1; step >= 1e-12; step *= 0.5) {
    bool level_improved = false;
    for (int pass = 0; pass < passes; ++pass) {
      bool improved = false;
      auto try_point = [&](Vec tx, Vec tw, double trho) {
        if (!project_chart(tx, tw, trho)) return;
        double v = chart_value(frame, tx, tw, trho);
        ++best.evals;
        if (v < best.value) {
          best.value = v;
          best.x = std::move(tx);
          best.w = std::move(tw);
          best.rho = trho;
          improved = true;
          level_improved = true;
        }
      };
      const Vec anchor_x = best.x;
      const Vec anchor_w = best.w;
      const double anchor_rho = best.rho;
      for (int c = 0; c < n_coords; ++c) {
        for (double sign : {1.0, -1.0}) {
          Vec tx = best.x;
          Vec tw = best.w;
          double trho = best.rho;
          if (c < per_vec) {
            bump_coord(tx, field, c, sign * step);
          } else if (c < n_coords - 1) {
            bump_coord(tw, field, c - per_vec, sign * step);
          } else {
            trho += sign * step;
          }
          try_point(std::move(tx), std::move(tw), trho);
        }
      }
      for (int q = 0; q < 6; ++q) {
        Vec tx = best.x + step * poll.gaussian_vector(frame.dim, field);
        Vec tw = best.w;
        if (has_w) tw = best.w + step * poll.gaussian_vector(frame.dim, field);
        try_point(std::move(tx), std::move(tw),
                  best.rho + step * poll.gaussian());
      }
      if (improved)
        try_point(2.0 * best.x - anchor_x, 2.0 * best.w - anchor_w,
                  2.0 * best.rho - anchor_rho);
      if (!improved) break;
    }
    if (step < 1e-9 && !level_improved) break;
  }
  return best;
}

Vec orthogonal_unit(const Vec& x, Rng& rng, Field field) {
  Eigen::Index n = x.size();
  if (n == 1) return Vec::Zero(1);
  for (int tries = 0; tries < 64; ++tries) {
    Vec w = rng.gaussian_vector(n, field);
    w -= inner(w, x) * x;
    double nw = w.norm();
    if (nw > 1e-8) return w / nw;
  }
  fail(ErrorKind::ConstructionFailed, "could not draw an orthogonal start");
}

struct Dim2Chart {
  Vec x;
  Vec w;
};

// Shared chart for the dimension-2 sweep and oracle. Real: angle t in
// [0, pi). Complex: a in [0, pi/2], phases b, c in [0, 2pi); c rotates y and
// is absorbed into w here so y = rho * w throughout.
Dim2Chart dim2_point(Field field, double a, double b, double c) {
  Dim2Chart p;
  if (field == Field::Real) {
    p.x = Vec(2);
    p.w = Vec(2);
    p.x << Complex(std::cos(a), 0), Complex(std::sin(a), 0);
    p.w << Complex(-std::sin(a), 0), Complex(std::cos(a), 0);
  } else {
    Complex eb = std::polar(1.0, b);
    Complex ec = std::polar(1.0, c);
    p.x = Vec(2);
    p.w = Vec(2);
    p.x << Complex(std::cos(a), 0), std::sin(a) * eb;
    p.w << ec * Complex(-std::sin(a), 0), ec * (std::cos(a) * eb);
  }
  return p;
}

struct SweepBest {
  double value = std::numeric_limits<double>::infinity();
  double a = 0.0, b = 0.0, c = 0.0, rho = 0.0;
};

SweepBest sweep_real(const FrameSpec& frame, double a_lo, double a_hi,
                     double rho_lo, double rho_hi, int na, int nr) {
  SweepBest best;
  for (int i = 0; i < na; ++i) {
    double a = a_lo + (a_hi - a_lo) * i / (na > 1 ? na - 1 : 1);
    Dim2Chart p = dim2_point(Field::Real, a, 0, 0);
    RealVec mx = magnitudes(frame, p.x).values;
    RealVec mw = magnitudes(frame, p.w).values;
    for (int j = 0; j <= nr; ++j) {
      double rho = rho_lo + (rho_hi - rho_lo) * j / nr;
      if (rho < 0 || rho > 1) continue;
      double v = (mx - rho * mw).norm() / std::sqrt(1.0 + rho * rho);
      if (v < best.value) {
        best.value = v;
        best.a = a;
        best.rho = rho;
      }
    }
  }
  return best;
}

SweepBest sweep_complex(const FrameSpec& frame, const SweepBest& center,
                        double ha, double hb, double hrho, int pts, int nc) {
  SweepBest best;
  for (int ia = 0; ia < pts; ++ia) {
    double a = center.a - ha + 2.0 * ha * ia / (pts - 1);
    a = std::clamp(a, 0.0, M_PI_2);
    for (int ib = 0; ib < pts; ++ib) {
      double b = center.b - hb + 2.0 * hb * ib / (pts - 1);
      for (int ic = 0; ic < nc; ++ic) {
        double c = nc > 1 ? center.c + 2.0 * M_PI * ic / nc : center.c;
        Dim2Chart p = dim2_point(Field::Complex, a, b, c);
        RealVec mx = magnitudes(frame, p.x).values;
        RealVec mw = magnitudes(frame, p.w).values;
        for (int ir = 0; ir < pts; ++ir) {
          double rho = center.rho - hrho + 2.0 * hrho * ir / (pts - 1);
          if (rho < 0 || rho > 1) continue;
          double v = (mx - rho * mw).norm() / std::sqrt(1.0 + rho * rho);
          if (v < best.value) {
            best.value = v;
            best.a = a;
            best.b = b;
            best.c = c;
            best.rho = rho;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "stable";
    case Verdict::Unstable:
      return "unstable";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_stability(double inf_psi, std::optional<double> oracle) {
  if (inf_psi < kTolZero) return Verdict::Unstable;
  if (inf_psi > kTolInconclusive) return Verdict::Stable;
  if (oracle) return *oracle < kTolZero ? Verdict::Unstable : Verdict::Stable;
  return Verdict::Inconclusive;
}

StabilityReport estimate_stability(const FrameSpec& frame,
                                   const SearchBudget& budget,
                                   std::uint64_t seed) {
  if (budget.n_starts < 1) fail(ErrorKind::BadArgument, "n_starts must be >= 1");
  const bool sweep_start =
      frame.dim == 2 && budget.grid_density > 1;
  const int total = budget.n_starts + (sweep_start ? 1 : 0);

  std::vector<RefineResult> results(total);
  std::atomic<long long> evals{0};

  parallel_for(static_cast<std::size_t>(total), budget.threads,
               [&](std::size_t i) {
                 Vec x, w;
                 double rho;
                 if (sweep_start && i == static_cast<std::size_t>(total - 1)) {
                   // Deterministic coarse chart sweep seeds the extra start.
                   if (frame.field == Field::Real) {
                     int d = budget.grid_density;
                     SweepBest s = sweep_real(frame, 0.0, M_PI * (d - 1) / d,
                                              0.0, 1.0, d, d);
                     Dim2Chart p = dim2_point(Field::Real, s.a, 0, 0);
                     x = p.x;
                     w = p.w;
                     rho = s.rho;
                   } else {
                     SweepBest center;
                     center.a = M_PI / 4;
                     center.b = M_PI;
                     center.rho = 0.5;
                     SweepBest s =
                         sweep_complex(frame, center, M_PI / 4, M_PI, 0.5,
                                       budget.grid_density, 8);
                     Dim2Chart p = dim2_point(Field::Complex, s.a, s.b, s.c);
                     x = p.x;
                     w = p.w;
                     rho = s.rho;
                   }
                 } else {
                   Rng rng(substream_seed(seed, i));
                   x = rng.unit_vector(frame.dim, frame.field);
                   w = orthogonal_unit(x, rng, frame.field);
                   rho = frame.dim > 1 ? rng.uniform(0.0, 1.0) : 0.0;
                 }
                 results[i] = refine(frame, x, w, rho, budget,
                                     substream_seed(substream_seed(seed, i),
                                                    7919));
                 evals.fetch_add(results[i].evals, std::memory_order_relaxed);
               });

  // Lexicographic (value, start index) winner: identical across thread
  // counts by construction.
  int win = 0;
  for (int i = 1; i < total; ++i) {
    if (results[i].value < results[win].value) win = i;
  }

  StabilityReport rep;
  rep.argmin.x = results[win].x;
  rep.argmin.y = results[win].rho * results[win].w;
  rep.n_starts = total;
  rep.n_evals = evals.load();
  rep.seed = seed;
  // Recomputing through the public quotient keeps the invariant
  // |value - psi(argmin)| <= 1e-12 independent of chart algebra.
  PhaseAlignment al = min_phase_dist(rep.argmin.x, rep.argmin.y);
  if (al.aligned_distance <= kTolDist) {
    rep.inf_psi_estimate = results[win].value;
  } else {
    rep.inf_psi_estimate =
        psi(frame, rep.argmin.x, rep.argmin.y).ratio;
  }
  rep.c_estimate = rep.inf_psi_estimate > kTolZero
                       ? 1.0 / rep.inf_psi_estimate
                       : std::numeric_limits<double>::infinity();
  rep.verdict = classify_stability(rep.inf_psi_estimate, std::nullopt);
  return rep;
}

double oracle_stability_dim2(const FrameSpec& frame, int grid_density) {
  if (frame.dim != 2)
    fail(ErrorKind::BadArgument, "oracle requires dimension 2");
  int d = std::max(grid_density, 8);

  if (frame.field == Field::Real) {
    // Dense sweep over [0, pi) x [0, 1] (x and -x give the same quotient, as
    // do y and -y, so half the circle suffices), then window zoom.
    SweepBest best = sweep_real(frame, 0.0, M_PI * (d - 1) / d, 0.0, 1.0, d, d);
    double ha = M_PI / d;
    double hr = 1.0 / d;
    for (int round = 0; round < 12; ++round) {
      SweepBest cand;
      for (int i = 0; i < 25; ++i) {
        double a = best.a - ha + 2.0 * ha * i / 24.0;
        double aw = std::fmod(a + M_PI, M_PI);  // angle wraps mod pi
        Dim2Chart p = dim2_point(Field::Real, aw, 0, 0);
        RealVec mx = magnitudes(frame, p.x).values;
        RealVec mw = magnitudes(frame, p.w).values;
        for (int j = 0; j < 25; ++j) {
          double rho = std::clamp(best.rho - hr + 2.0 * hr * j / 24.0, 0.0, 1.0);
          double v = (mx - rho * mw).norm() / std::sqrt(1.0 + rho * rho);
          if (v < cand.value) {
            cand.value = v;
            cand.a = a;
            cand.rho = rho;
          }
        }
      }
      if (cand.value < best.value) best = cand;
      ha /= 6.0;
      hr /= 6.0;
    }
    return best.value;
  }

  // Complex: coarse (a, b, c, rho) sweep, then zoom in (a, b, rho) holding
  // the best c. The quotient is c-invariant; the coarse c axis checks that.
  SweepBest center;
  center.a = M_PI / 4;
  center.b = M_PI;
  center.rho = 0.5;
  SweepBest best =
      sweep_complex(frame, center, M_PI / 4, M_PI, 0.5, d, 8);
  double ha = (M_PI / 2) / (d - 1);
  double hb = (2 * M_PI) / (d - 1);
  double hr = 1.0 / (d - 1);
  for (int round = 0; round < 12; ++round) {
    SweepBest c = best;
    SweepBest cand = sweep_complex(frame, c, ha, hb, hr, 25, 1);
    if (cand.value < best.value) best = cand;
    ha /= 6.0;
    hb /= 6.0;
    hr /= 6.0;
  }
  return best.value;
}

namespace {

// Modified Gram-Schmidt rank with early exit at `need`: a cheap screen for
// the split scan. Candidate violations are re-certified by SVD before they
// count.
int mgs_rank(const RealMat& cols, const std::vector<int>& idx, int need,
             double tol) {
  std::vector<RealVec> basis;
  for (int j : idx) {
    RealVec v = cols.col(j);
    for (int rep = 0; rep < 2; ++rep)
      for (const RealVec& b : basis) v -= b.dot(v) * b;
    double nv = v.norm();
    if (nv > tol) {
      basis.push_back(v / nv);
      if (static_cast<int>(basis.size()) == need) return need;
    }
  }
  return static_cast<int>(basis.size());
}

RealMat gather(const RealMat& cols, const std::vector<int>& idx) {
  RealMat out(cols.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(i) = cols.col(idx[i]);
  return out;
}

}  // namespace

ComplementReport complement_property(const FrameSpec& frame) {
  if (frame.field != Field::Real)
    fail(ErrorKind::FieldUnsupported, "complement scan handles real frames");
  if (frame.size() > 22)
    fail(ErrorKind::TooLarge,
         "complement scan is exponential; limited to 22 vectors");

  const int n = static_cast<int>(frame.dim);
  std::vector<int> active;
  for (int j = 0; j < frame.size(); ++j) {
    if (frame.weights[j] > 0 && frame.vectors.col(j).norm() > 0)
      active.push_back(j);
  }

  RealMat cols = frame.vectors.real();
  double maxnorm = 0;
  for (int j : active) maxnorm = std::max(maxnorm, cols.col(j).norm());
  const double tol = 1e-10 * std::max(maxnorm, 1e-300);

  auto certify = [&](const std::vector<int>& side) {
    return side.empty() ? 0 : rank_of(gather(cols, side));
  };

  ComplementReport rep;
  const int ma = static_cast<int>(active.size());

  // Empty family, or family that does not span: the empty subset violates.
  if (ma == 0 || certify(active) < n) {
    rep.holds = false;
    rep.violating_subset = {};
    rep.rank_subset = 0;
    rep.rank_complement = certify(active);
    return rep;
  }

  // Fewer than 2n-1 vectors: a balanced split leaves both sides under n.
  if (ma < 2 * n - 1) {
    std::vector<int> s(active.begin(), active.begin() + ma / 2);
    std::vector<int> c(active.begin() + ma / 2, active.end());
    rep.holds = false;
    rep.violating_subset = s;
    rep.rank_subset = certify(s);
    rep.rank_complement = certify(c);
    return rep;
  }

  // Half enumeration: the last active vector stays on the complement side,
  // covering each unordered split once.
  const std::uint64_t masks = 1ULL << (ma - 1);
  std::vector<int> s, c;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    s.clear();
    c.clear();
    for (int b = 0; b < ma - 1; ++b)
      ((mask >> b) & 1 ? s : c).push_back(active[b]);
    c.push_back(active[ma - 1]);
    if (mgs_rank(cols, s, n, tol) == n) continue;
    if (mgs_rank(cols, c, n, tol) == n) continue;
    int rs = certify(s);
    int rc = certify(c);
    if (rs < n && rc < n) {
      rep.holds = false;
      rep.violating_subset = s;
      rep.rank_subset = rs;
      rep.rank_complement = rc;
      return rep;
    }
  }
  rep.holds = true;
  return rep;
}

OrthoPair pr_failure_witness(const FrameSpec& frame,
                             const ComplementReport& report) {
  if (frame.field != Field::Real)
    fail(ErrorKind::FieldUnsupported, "witness synthesis handles real frames");
  if (report.holds)
    fail(ErrorKind::BadArgument,
         "frame satisfies the complement property; no failing split");

  std::vector<char> in_subset(frame.size(), 0);
  for (int j : report.violating_subset) {
    if (j < 0 || j >= frame.size())
      fail(ErrorKind::BadArgument, "violating subset index out of range");
    in_subset[j] = 1;
  }
  std::vector<int> side_s, side_c;
  for (int j = 0; j < frame.size(); ++j) {
    if (frame.weights[j] <= 0 || frame.vectors.col(j).norm() == 0) continue;
    (in_subset[j] ? side_s : side_c).push_back(j);
  }

  RealMat cols = frame.vectors.real();
  RealMat null_s = left_null_space(gather(cols, side_s));
  RealMat null_c = left_null_space(gather(cols, side_c));
  if (null_s.cols() == 0 || null_c.cols() == 0)
    fail(ErrorKind::BadArgument, "split is not rank deficient on both sides");

  // Pick the least-aligned normal pair; u = +/- v never yields a usable
  // witness, and cannot occur for a spanning family.
  int bi = 0, bj = 0;
  double bcorr = 2.0;
  for (int i = 0; i < null_s.cols(); ++i) {
    for (int j = 0; j < null_c.cols(); ++j) {
      double corr = std::abs(null_s.col(i).dot(null_c.col(j)));
      if (corr < bcorr) {
        bcorr = corr;
        bi = i;
        bj = j;
      }
    }
  }
  if (bcorr >= 1.0 - 1e-10)
    fail(ErrorKind::DegenerateWitness,
         "deficient spans share their normal directions");

  RealVec u = null_s.col(bi);
  RealVec v = null_c.col(bj);
  Vec p = (u + v).cast<Complex>();
  Vec q = (u - v).cast<Complex>();
  // <p, q> = ||u||^2 - ||v||^2 = 0, so the pair is already aligned, and
  // every measured vector sees equal magnitudes from p and q.
  return reduce_pair(frame, p, q);
}

}  // namespace framelab
