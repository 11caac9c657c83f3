#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "framelab/local.hpp"
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

TEST_CASE("separation radius of a coordinate basis") {
  FrameSpec f = gen_onb(2, Field::Real);
  Vec x(2);
  x << Complex(1, 0), Complex(2, 0);
  LocalReport rep = local_radius(f, x);
  CHECK(rep.beta == doctest::Approx(1.0));
  CHECK(rep.support.size() == 2);
  CHECK(rep.lower_bound == doctest::Approx(1.0));
  CHECK(rep.constant == doctest::Approx(1.0));

  Vec e1(2);
  e1 << Complex(1, 0), Complex(0, 0);
  LocalReport one = local_radius(f, e1);
  CHECK(one.support.size() == 1);
  CHECK(one.beta == doctest::Approx(1.0));

  Vec zero = Vec::Zero(2);
  CHECK(throws_kind(ErrorKind::ZeroVector, [&] { local_radius(f, zero); }));
}

TEST_CASE("local bound holds inside the separation ball") {
  FrameSpec f = gen_onb(3, Field::Real);
  Vec x(3);
  x << Complex(1, 0), Complex(2, 0), Complex(-1.5, 0);
  LocalReport rep = local_radius(f, x);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    Vec d = rng.unit_vector(3, Field::Real);
    double r = rng.uniform(0.0, 0.99) * rep.beta;
    LocalBoundCheck c = local_bound_check(f, x, x + r * d);
    CHECK(c.holds);
    CHECK(c.signs_ok);
    CHECK(c.dist <= c.gap + 1e-9);  // A = 1 here
  }
  Vec far = x;
  far[0] = Complex(-1, 0);
  CHECK(throws_kind(ErrorKind::RadiusExceeded,
                    [&] { local_bound_check(f, x, far); }));
  CHECK(throws_kind(ErrorKind::FieldUnsupported, [&] {
    local_bound_check(gen_onb(2, Field::Complex), Vec::Ones(2), Vec::Ones(2));
  }));
}

TEST_CASE("weighted frames pass the bound with their own constant") {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    int n = 2 + static_cast<int>(s % 3);
    FrameSpec f = testsup::weighted_frame(n, 2 * n, Field::Real, 300 + s);
    Vec x = testsup::random_vec(n, Field::Real, 500 + s);
    if (x.norm() < 0.1) continue;
    LocalReport rep = local_radius(f, x);
    Rng rng(700 + s);
    Vec d = rng.unit_vector(n, Field::Real);
    double r = rng.uniform(0.0, 0.99) * rep.beta;
    LocalBoundCheck c = local_bound_check(f, x, x + r * d);
    CHECK(c.holds);
    CHECK(c.signs_ok);
  }
}

TEST_CASE("tail norm shrinks as alpha does") {
  FrameSpec f = gen_mercedes();
  Vec x(2);
  x << Complex(1, 0), Complex(0.4, 0);
  double prev = -1.0;
  for (double alpha : {0.9, 0.6, 0.3, 0.1, 0.01}) {
    TailReport rep = tail_norm(f, x, alpha);
    if (prev >= 0) CHECK(rep.tail <= prev + 1e-12);
    prev = rep.tail;
  }
  TailReport all = tail_norm(f, x, 1e-9);
  CHECK(all.omega.size() == 3);
  CHECK(all.tail == 0.0);
}

TEST_CASE("tail radius selection") {
  FrameSpec f = gen_onb(2, Field::Real);
  Vec x(2);
  x << Complex(1, 0), Complex(1, 0);
  TailRadius tr = choose_tail_radius(f, x, 0.5, 200, 9);
  CHECK(tr.report.tail * tr.report.tail < 0.5);
  CHECK(tr.beta_alpha > 0.0);
  CHECK(tr.beta_alpha <= 1.0);
  CHECK(tr.report.omega.size() == 2);
  CHECK(tr.n_sampled == 200);
  CHECK(tr.sampled_margin >= -1e-12);

  CHECK(throws_kind(ErrorKind::EpsilonOutOfRange,
                    [&] { choose_tail_radius(f, x, 1.5); }));
  CHECK(throws_kind(ErrorKind::EpsilonOutOfRange,
                    [&] { choose_tail_radius(f, x, 0.0); }));

  // e1 against the coordinate basis: the e2 row never leaves the tail, so
  // targets below its norm are structurally unreachable.
  Vec e1(2);
  e1 << Complex(1, 0), Complex(0, 0);
  CHECK(throws_kind(ErrorKind::TailNotReachable,
                    [&] { choose_tail_radius(f, e1, 0.5); }));
}

TEST_CASE("sampled tail guarantee on random frames") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    int n = 2 + static_cast<int>(s % 2);
    FrameSpec f = testsup::random_frame(n, 2 * n + 1, Field::Real, 900 + s);
    Vec x = testsup::random_vec(n, Field::Real, 950 + s);
    if (x.norm() < 0.1) continue;
    double a = frame_bounds(f).lower;
    TailRadius tr = choose_tail_radius(f, x, 0.5 * a, 100, s);
    CHECK(tr.sampled_margin >= -1e-12);
  }
}

TEST_CASE("ratio profile structure") {
  FrameSpec f = gen_mercedes();
  Vec x(2);
  x << Complex(1, 0), Complex(0.3, 0);
  LocalReport rep = local_ratio_profile(f, x, 16, 10, 13, {}, 2);
  REQUIRE(rep.radii.size() == 10);
  REQUIRE(rep.min_ratio.size() == 10);
  REQUIRE(rep.trend.size() == 9);
  CHECK(rep.radii[0] == doctest::Approx(rep.beta / 2));
  for (int k = 1; k < 10; ++k)
    CHECK(rep.radii[k] == doctest::Approx(rep.radii[k - 1] / 2));
  for (double v : rep.min_ratio) CHECK(std::isfinite(v));
  CHECK(rep.empirical_local_inf > 0.0);

  // Same seed, different thread count: identical numbers.
  LocalReport rep1 = local_ratio_profile(f, x, 16, 10, 13, {}, 1);
  for (int k = 0; k < 10; ++k) CHECK(rep.min_ratio[k] == rep1.min_ratio[k]);
}

TEST_CASE("extra directions can only lower the profile") {
  FrameSpec f = gen_onb(2, Field::Complex);
  Vec x(2);
  x << Complex(1, 0), Complex(1, 0);
  Vec dir(2);
  dir << Complex(0, 1), Complex(0, -1);
  LocalReport base = local_ratio_profile(f, x, 8, 8, 17, {}, 1);
  LocalReport with = local_ratio_profile(f, x, 8, 8, 17, {dir}, 1);
  for (int k = 0; k < 8; ++k) CHECK(with.min_ratio[k] <= base.min_ratio[k] + 1e-15);
  // The twisting direction collapses the deep ratios.
  CHECK(with.min_ratio[7] < 0.1 * with.min_ratio[0] + 1e-12);
}
