#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "framelab/ortho_reduce.hpp"
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

TEST_CASE("reduction parameter on the worked pair") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(0.6, 0), Complex(0.8, 0);
  CHECK(reduction_parameter(x, y) == doctest::Approx(0.25).epsilon(1e-14));

  FrameSpec f = gen_onb(2, Field::Real);
  OrthoPair p = reduce_pair(f, x, y);
  CHECK(p.R == doctest::Approx(0.25).epsilon(1e-14));
  double r10 = std::sqrt(10.0);
  CHECK(p.x_o[0].real() == doctest::Approx(3.0 / r10).epsilon(1e-13));
  CHECK(p.x_o[1].real() == doctest::Approx(-1.0 / r10).epsilon(1e-13));
  CHECK(p.y_o[0].real() == doctest::Approx(1.0 / r10).epsilon(1e-13));
  CHECK(p.y_o[1].real() == doctest::Approx(3.0 / r10).epsilon(1e-13));
  CHECK(std::abs(inner(p.x_o, p.y_o)) <= 1e-12);
  CHECK(p.psi_after <= p.psi_before + 1e-12);
}

TEST_CASE("positively colinear pairs reduce to a zero partner") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(5, 0), Complex(0, 0);
  CHECK(reduction_parameter(x, y) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  FrameSpec f = gen_onb(2, Field::Real);
  OrthoPair p = reduce_pair(f, x, y);
  // x - R(x+y) vanishes; the swap puts the surviving vector first.
  CHECK(p.x_o.norm() == doctest::Approx(1.0));
  CHECK(p.y_o.norm() <= 1e-12);
  CHECK(p.x_o[0].real() == doctest::Approx(1.0));
  CHECK(p.psi_after <= p.psi_before + 1e-12);
}

TEST_CASE("orthogonal input is left in place") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(0, 0), Complex(0.5, 0);
  CHECK(reduction_parameter(x, y) == doctest::Approx(0.0));
  FrameSpec f = gen_onb(2, Field::Real);
  OrthoPair p = reduce_pair(f, x, y);
  CHECK((p.x_o - x).norm() <= 1e-14);
  CHECK((p.y_o - y).norm() <= 1e-14);
}

TEST_CASE("degenerate pairs are refused") {
  FrameSpec f = gen_onb(2, Field::Complex);
  Vec x = testsup::random_vec(2, Field::Complex, 3);
  CHECK(throws_kind(ErrorKind::DegeneratePair, [&] { reduce_pair(f, x, x); }));
  Vec y = std::polar(1.0, 0.3) * x;
  CHECK(throws_kind(ErrorKind::DegeneratePair, [&] { reduce_pair(f, x, y); }));
}

TEST_CASE("alignment is required for the raw parameter") {
  Vec x(2), y(2);
  x << Complex(1, 0), Complex(0, 0);
  y << Complex(-1, 0), Complex(1, 0);
  // <x, y> < 0: the pair was not aligned first.
  CHECK(throws_kind(ErrorKind::BadArgument,
                    [&] { reduction_parameter(x, y); }));
}

TEST_CASE("random corpus: quotient never increases, output orthogonal") {
  int checked = 0;
  for (std::uint64_t s = 1; s <= 300; ++s) {
    Field field = s % 2 ? Field::Real : Field::Complex;
    int n = 2 + static_cast<int>(s % 4);
    FrameSpec f = testsup::weighted_frame(n, n + 2, field, s);
    Vec x = testsup::random_vec(n, field, 3 * s + 1);
    Vec y = testsup::random_vec(n, field, 3 * s + 2, 0.8);
    OrthoPair p = reduce_pair(f, x, y);
    double scale = std::max(p.x_o.norm(), p.y_o.norm());
    CHECK(std::abs(inner(p.x_o, p.y_o)) <= 1e-10 * std::max(1.0, scale));
    CHECK(p.psi_after <= p.psi_before + 1e-9);
    CHECK(p.R >= 0.0);
    CHECK(p.R <= 0.5);
    CHECK(std::max(p.x_o.norm(), p.y_o.norm()) == doctest::Approx(1.0));
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("per-coordinate gap decreases toward the reduction point") {
  for (std::uint64_t s = 1; s <= 200; ++s) {
    Field field = s % 2 ? Field::Real : Field::Complex;
    int n = 2 + static_cast<int>(s % 3);
    FrameSpec f = testsup::random_frame(n, n + 3, field, 1000 + s);
    Vec x = testsup::random_vec(n, field, 5 * s + 1);
    Vec y = phase_align(x, testsup::random_vec(n, field, 5 * s + 2));
    GapMonotoneReport rep = coordinate_gap_monotone(f, x, y, 101);
    CHECK(rep.max_upward_step <= 1e-10);
    CHECK(rep.min_drop_at_R >= -1e-12);
    CHECK(rep.max_abs_at_half <= 1e-10);
  }
}
