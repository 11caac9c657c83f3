#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "framelab/phase_metric.hpp"
#include "framelab/witness.hpp"
#include "test_support.hpp"

using namespace framelab;

namespace {

bool throws_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

std::vector<double> halving(double a0, int count) {
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = std::ldexp(a0, -i);
  return a;
}

// Aligned distances are produced by cancellation of squared-norm terms, so
// their absolute accuracy degrades like |z|^2 / dist.
double dist_slack(const Vec& z, double dist) {
  return 1e-11 * z.squaredNorm() / std::max(dist, 1e-300) + 1e-12;
}

}  // namespace

TEST_CASE("perpendicular component") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(3, 0), Complex(4, 0);
  CHECK(perp_constant(x, y) == doctest::Approx(4.0));
  CHECK(perp_constant(x, x) <= 1e-15);
  CHECK(throws_kind(ErrorKind::ZeroVector,
                    [&] { perp_constant(Vec::Zero(2), y); }));
}

TEST_CASE("coordinate basis witness in C^2 is the exact twist") {
  FrameSpec f = gen_onb(2, Field::Complex);
  Vec x(2);
  x << Complex(1, 0), Complex(1, 0);
  WitnessPair w = cn_basis_witness(f, x);
  CHECK((w.z - x).norm() == 0.0);
  CHECK(std::abs(w.direction[0] - Complex(0, 1)) <= 1e-15);
  CHECK(std::abs(w.direction[1] - Complex(0, -1)) <= 1e-15);

  // Numerator along the twist is known in closed form.
  std::vector<double> alphas = halving(0.25, 12);
  WitnessTrace tr = trace_witness(f, w.z, w.direction, alphas);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    double a = alphas[i];
    double exact = std::sqrt(2.0) * (std::sqrt(1.0 + a * a) - 1.0);
    CHECK(tr.numerators[i] == doctest::Approx(exact).epsilon(1e-6));
    CHECK(tr.denominators[i] >=
          a * tr.c_lemma - dist_slack(w.z, tr.denominators[i]));
  }
  CHECK(tr.ratio_order == doctest::Approx(1.0).epsilon(0.05));
  CHECK(tr.numerator_order == doctest::Approx(2.0).epsilon(0.05));
  CHECK(tr.denominator_order == doctest::Approx(1.0).epsilon(0.05));

  QuadraticBoundReport qb = verify_quadratic_bound(f, w.z, w.direction, alphas);
  CHECK(qb.k == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(qb.max_violation <= 1e-12);
  CHECK(qb.alpha_cutoff == doctest::Approx(1.0));
}

TEST_CASE("basis witness refuses basis multiples") {
  FrameSpec f = gen_onb(3, Field::Complex);
  Vec e2 = Vec::Zero(3);
  e2[1] = Complex(2.5, 0);
  CHECK(throws_kind(ErrorKind::HypothesisFail,
                    [&] { cn_basis_witness(f, e2); }));
  CHECK(throws_kind(ErrorKind::FieldUnsupported, [&] {
    cn_basis_witness(gen_onb(2, Field::Real), Vec::Ones(2));
  }));
  CHECK(throws_kind(ErrorKind::NotABasis, [&] {
    cn_basis_witness(gen_harmonic(2, 3), Vec::Ones(2));
  }));
}

TEST_CASE("witness ratios collapse on conditioned random bases") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    int n = 2 + static_cast<int>(s % 4);
    FrameSpec f = testsup::conditioned_basis(n, Field::Complex, s, 20.0);
    Vec x = testsup::random_vec(n, Field::Complex, 70 + s);
    WitnessPair w = cn_basis_witness(f, x);
    double cutoff = quadratic_regime_cutoff(f, w.z, w.direction);
    std::vector<double> alphas = halving(std::min(0.1, cutoff / 4), 16);
    WitnessTrace tr = trace_witness(f, w.z, w.direction, alphas);
    CHECK(tr.ratio_order == doctest::Approx(1.0).epsilon(0.1));
    CHECK(tr.ratios.back() <= 1e-3 * tr.ratios.front());
    QuadraticBoundReport qb =
        verify_quadratic_bound(f, w.z, w.direction, alphas);
    CHECK(qb.max_violation <= 1e-12);
  }
}

TEST_CASE("shifted-pair witness on embedded real data") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    int n = 2 + static_cast<int>(s % 3);
    int m = n + 1 + static_cast<int>(s % 3);
    FrameSpec base = testsup::random_frame(n, m, Field::Real, 120 + s);
    FrameSpec f = make_frame(Field::Complex, base.vectors, "embedded");
    Vec x = testsup::random_vec(n, Field::Real, 140 + s);
    Vec y = testsup::random_vec(n, Field::Real, 160 + s);
    WitnessPair w = real_coeff_witness(f, x, y, s);
    CHECK(w.shear != 0.0);
    // direction = i y keeps coefficient magnitudes at second order.
    double cutoff = quadratic_regime_cutoff(f, w.z, w.direction);
    std::vector<double> alphas = halving(std::min(0.1, cutoff / 4), 16);
    WitnessTrace tr = trace_witness(f, w.z, w.direction, alphas);
    CHECK(tr.ratio_order == doctest::Approx(1.0).epsilon(0.1));
    for (std::size_t i = 0; i < alphas.size(); ++i)
      CHECK(tr.denominators[i] >= alphas[i] * tr.c_lemma -
                                      dist_slack(w.z, tr.denominators[i]));
    QuadraticBoundReport qb =
        verify_quadratic_bound(f, w.z, w.direction, alphas);
    CHECK(qb.max_violation <= 1e-12);
  }
}

TEST_CASE("shifted-pair witness hypotheses") {
  FrameSpec f = gen_onb(2, Field::Complex);
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(0, 0), Complex(0, 1);  // imaginary coefficient
  CHECK(throws_kind(ErrorKind::HypothesisFail,
                    [&] { real_coeff_witness(f, x, y, 1); }));
  Vec y2 = 2.0 * x;  // dependent
  CHECK(throws_kind(ErrorKind::HypothesisFail,
                    [&] { real_coeff_witness(f, x, y2, 1); }));
}

TEST_CASE("trace guards") {
  FrameSpec f = gen_onb(2, Field::Complex);
  Vec x(2);
  x << Complex(1, 0), Complex(1, 0);
  CHECK(throws_kind(ErrorKind::BadArgument, [&] {
    trace_witness(f, x, Complex(0, 1) * x, {0.1, 0.2});
  }));
  CHECK(throws_kind(ErrorKind::HypothesisFail, [&] {
    trace_witness(f, x, Complex(0, 1) * x, {0.2, 0.1});
  }));
  WitnessPair w = cn_basis_witness(f, x);
  CHECK(throws_kind(ErrorKind::RegimeExceeded, [&] {
    verify_quadratic_bound(f, w.z, w.direction, {100.0, 1.0});
  }));
}

TEST_CASE("real twists do not collapse") {
  // Same construction shape over the real field: the ratio stays put.
  FrameSpec f = testsup::random_frame(3, 5, Field::Real, 200);
  Vec z = testsup::random_vec(3, Field::Real, 201);
  Vec dir = testsup::random_vec(3, Field::Real, 202);
  WitnessTrace tr = trace_witness(f, z, dir, halving(0.05, 14));
  CHECK(std::abs(tr.ratio_order) <= 0.2);
  CHECK(tr.ratios.back() >= 0.2 * tr.ratios.front());
}
