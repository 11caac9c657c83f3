#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "framelab/phase_metric.hpp"
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

}  // namespace

TEST_CASE("one-dimensional complex alignment") {
  Vec x(1), y(1);
  x << Complex(1, 0);
  y << Complex(0, 1);
  PhaseAlignment a = min_phase_dist(x, y);
  // <x, y> = -i, so lambda = -i and lambda * y = (1).
  CHECK(std::abs(a.lambda - Complex(0, -1)) <= 1e-15);
  CHECK(a.aligned_distance <= 1e-12);
  Vec aligned = phase_align(x, y);
  CHECK(std::abs(aligned[0] - Complex(1, 0)) <= 1e-15);
}

TEST_CASE("orthogonal pairs align with lambda = 1") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(0, 0), Complex(0, 2);
  PhaseAlignment a = min_phase_dist(x, y);
  CHECK(a.lambda == Complex(1, 0));
  CHECK(a.aligned_distance == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("real pairs align with a sign") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(-2, 0), Complex(0, 0);
  PhaseAlignment a = min_phase_dist(x, y);
  CHECK(a.lambda == Complex(-1, 0));
  CHECK(a.aligned_distance == doctest::Approx(1.0));
}

TEST_CASE("alignment matches the brute-force circle minimum") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    Field field = s % 2 ? Field::Real : Field::Complex;
    Eigen::Index n = 2 + s % 4;
    Vec x = testsup::random_vec(n, field, 2 * s);
    Vec y = testsup::random_vec(n, field, 2 * s + 1, 0.7);
    double closed = min_phase_dist(x, y).aligned_distance;
    double brute = testsup::circle_min_dist(x, y, field);
    // The circle grid only overestimates.
    CHECK(closed <= brute + 1e-12);
    CHECK(brute - closed <= 1e-7 * (1.0 + brute));
  }
}

TEST_CASE("aligned inner product is real and nonnegative") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    Vec x = testsup::random_vec(3, Field::Complex, 100 + s);
    Vec y = testsup::random_vec(3, Field::Complex, 200 + s);
    Vec ya = phase_align(x, y);
    Complex p = inner(ya, x);
    CHECK(std::abs(p.imag()) <= 1e-12 * std::abs(p));
    CHECK(p.real() >= -1e-12);
    CHECK(ya.norm() == doctest::Approx(y.norm()));
  }
}

TEST_CASE("magnitude gap basics") {
  FrameSpec f = gen_onb(2, Field::Real);
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(2, 0);
  y << Complex(2, 0), Complex(1, 0);
  CHECK(magnitude_gap(f, x, y) == doctest::Approx(std::sqrt(2.0)));
  CHECK(magnitude_gap(f, y, x) == doctest::Approx(std::sqrt(2.0)));
  // Phase changes are invisible to magnitudes.
  FrameSpec fc = gen_onb(2, Field::Complex);
  Vec yc = Complex(0, 1) * y;
  CHECK(magnitude_gap(fc, x, yc) == doctest::Approx(std::sqrt(2.0)));
  CHECK(magnitude_gap(fc, x, x) == doctest::Approx(0.0));
}

TEST_CASE("quotient value and degeneracy") {
  FrameSpec f = gen_onb(2, Field::Real);
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(0, 0), Complex(1, 0);
  PsiValue v = psi(f, x, y);
  CHECK(v.numerator == doctest::Approx(std::sqrt(2.0)));
  CHECK(v.denominator == doctest::Approx(std::sqrt(2.0)));
  CHECK(v.ratio == doctest::Approx(1.0));

  CHECK(throws_kind(ErrorKind::DegeneratePair, [&] { psi(f, x, x); }));
  // A unimodular multiple is degenerate over the complex field.
  FrameSpec fc = gen_onb(2, Field::Complex);
  Vec xc = testsup::random_vec(2, Field::Complex, 5);
  Vec yc = std::polar(1.0, 0.7) * xc;
  CHECK(throws_kind(ErrorKind::DegeneratePair, [&] { psi(fc, xc, yc); }));
}

TEST_CASE("clamped distance never goes negative") {
  // Nearly identical vectors probe the cancellation guard.
  Vec x = testsup::random_vec(4, Field::Complex, 9);
  Vec y = x * std::polar(1.0, 1e-9);
  PhaseAlignment a = min_phase_dist(x, y);
  CHECK(a.aligned_distance >= 0.0);
  CHECK(a.aligned_distance <= 1e-7);
}
