#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "framelab/phase_metric.hpp"
#include "framelab/stability.hpp"
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

SearchBudget small_budget() {
  SearchBudget b;
  b.n_starts = 48;
  b.refine_iters = 40;
  b.threads = 1;
  return b;
}

}  // namespace

TEST_CASE("verdict classification") {
  CHECK(classify_stability(1e-9, std::nullopt) == Verdict::Unstable);
  CHECK(classify_stability(5e-3, std::nullopt) == Verdict::Stable);
  CHECK(classify_stability(5e-5, std::nullopt) == Verdict::Inconclusive);
  CHECK(classify_stability(5e-5, 2e-5) == Verdict::Stable);
  CHECK(classify_stability(5e-5, 1e-8) == Verdict::Unstable);
  CHECK(std::string(verdict_name(Verdict::Stable)) == "stable");
}

TEST_CASE("single direction in R^1 is perfectly stable") {
  FrameSpec f = gen_onb(1, Field::Real);
  StabilityReport rep = estimate_stability(f, small_budget(), 1);
  CHECK(rep.inf_psi_estimate == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.verdict == Verdict::Stable);
  CHECK(rep.c_estimate == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a real basis of R^2 collapses to zero") {
  FrameSpec f = gen_onb(2, Field::Real);
  SearchBudget b = small_budget();
  b.grid_density = 48;
  StabilityReport rep = estimate_stability(f, b, 7);
  CHECK(rep.inf_psi_estimate <= 1e-8);
  CHECK(rep.verdict == Verdict::Unstable);
  CHECK(std::isinf(rep.c_estimate));
}

TEST_CASE("search stays consistent with its argmin") {
  FrameSpec f = gen_mercedes();
  SearchBudget b = small_budget();
  b.grid_density = 64;
  StabilityReport rep = estimate_stability(f, b, 11);
  CHECK(rep.inf_psi_estimate > 1e-4);
  PhaseAlignment al = min_phase_dist(rep.argmin.x, rep.argmin.y);
  if (al.aligned_distance > kTolDist) {
    double check = psi(f, rep.argmin.x, rep.argmin.y).ratio;
    CHECK(std::abs(check - rep.inf_psi_estimate) <= 1e-12);
  }
  CHECK(rep.n_starts == b.n_starts + 1);
  CHECK(rep.n_evals > 0);
}

TEST_CASE("thread count does not change the result") {
  FrameSpec f = testsup::random_frame(3, 5, Field::Real, 21);
  SearchBudget b1 = small_budget();
  SearchBudget b4 = small_budget();
  b4.threads = 4;
  StabilityReport r1 = estimate_stability(f, b1, 5);
  StabilityReport r4 = estimate_stability(f, b4, 5);
  CHECK(r1.inf_psi_estimate == r4.inf_psi_estimate);
  CHECK((r1.argmin.x - r4.argmin.x).norm() == 0.0);
  CHECK((r1.argmin.y - r4.argmin.y).norm() == 0.0);
}

TEST_CASE("dimension-2 oracle localizes the mercedes minimum") {
  FrameSpec f = gen_mercedes();
  double a = oracle_stability_dim2(f, 200);
  double b = oracle_stability_dim2(f, 317);
  CHECK(a > 1e-4);
  CHECK(std::abs(a - b) <= 1e-6 * std::max(a, b));

  SearchBudget budget = small_budget();
  budget.grid_density = 64;
  StabilityReport rep = estimate_stability(f, budget, 3);
  CHECK(std::abs(rep.inf_psi_estimate - a) <= 0.01 * a);
}

TEST_CASE("oracle flags the zero of a real basis") {
  FrameSpec f = gen_onb(2, Field::Real);
  CHECK(oracle_stability_dim2(f, 128) <= 1e-9);
  CHECK(throws_kind(ErrorKind::BadArgument, [&] {
    oracle_stability_dim2(gen_onb(3, Field::Real), 64);
  }));
}

TEST_CASE("complement property of reference families") {
  ComplementReport mer = complement_property(gen_mercedes());
  CHECK(mer.holds);

  ComplementReport onb = complement_property(gen_onb(2, Field::Real));
  CHECK(!onb.holds);
  CHECK(onb.rank_subset < 2);
  CHECK(onb.rank_complement < 2);

  // Duplicated directions do not rescue a deficient family.
  Mat dup(2, 3);
  dup << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0),
      Complex(0, 0), Complex(1, 0);
  CHECK(!complement_property(make_frame(Field::Real, dup)).holds);

  // Zero-weight vectors are invisible to the scan.
  RealVec w(4);
  w << 1.0, 1.0, 1.0, 0.0;
  Mat padded(2, 4);
  padded.leftCols(3) = gen_mercedes().vectors;
  padded.col(3) = dup.col(0);
  CHECK(complement_property(make_frame(Field::Real, padded, w)).holds);
}

TEST_CASE("complement property guards") {
  CHECK(throws_kind(ErrorKind::FieldUnsupported, [] {
    complement_property(gen_onb(2, Field::Complex));
  }));
  CHECK(throws_kind(ErrorKind::TooLarge, [] {
    complement_property(testsup::random_frame(2, 23, Field::Real, 1));
  }));
}

TEST_CASE("generic real frames with enough vectors pass the scan") {
  for (std::uint64_t s = 1; s <= 6; ++s) {
    int n = 2 + static_cast<int>(s % 3);
    FrameSpec f = testsup::random_frame(n, 2 * n - 1 + static_cast<int>(s % 2),
                                        Field::Real, 40 + s);
    CHECK(complement_property(f).holds);
  }
  for (std::uint64_t s = 1; s <= 6; ++s) {
    int n = 3 + static_cast<int>(s % 2);
    FrameSpec f =
        testsup::random_frame(n, 2 * n - 2, Field::Real, 60 + s);
    CHECK(!complement_property(f).holds);
  }
}

TEST_CASE("failure witness has zero gap and unit-scale distance") {
  for (std::uint64_t s = 1; s <= 8; ++s) {
    int n = 2 + static_cast<int>(s % 3);
    FrameSpec f = testsup::random_frame(n, 2 * n - 2, Field::Real, 80 + s);
    ComplementReport rep = complement_property(f);
    REQUIRE(!rep.holds);
    OrthoPair w = pr_failure_witness(f, rep);
    CHECK(magnitude_gap(f, w.x_o, w.y_o) <= 1e-8);
    double dist = min_phase_dist(w.x_o, w.y_o).aligned_distance;
    CHECK(dist >= 0.1);
    CHECK(std::abs(inner(w.x_o, w.y_o)) <= 1e-10);
  }
  CHECK(throws_kind(ErrorKind::BadArgument, [] {
    FrameSpec mer = gen_mercedes();
    pr_failure_witness(mer, complement_property(mer));
  }));
}
