#include "framelab/generators.hpp"

#include <cmath>

#include "framelab/rng.hpp"

namespace framelab {

FrameSpec gen_onb(int n, Field field) {
  if (n < 1) fail(ErrorKind::BadArgument, "dimension must be positive");
  return make_frame(field, Mat::Identity(n, n), "onb");
}

FrameSpec gen_mercedes() {
  Mat vectors(2, 3);
  for (int j = 0; j < 3; ++j) {
    double t = 2.0 * M_PI * j / 3.0;
    vectors(0, j) = Complex(std::cos(t), 0.0);
    vectors(1, j) = Complex(std::sin(t), 0.0);
  }
  return make_frame(Field::Real, vectors, "mercedes");
}

FrameSpec gen_random(int n, int m, Field field, std::uint64_t seed) {
  if (n < 1 || m < 1) fail(ErrorKind::BadArgument, "need n >= 1 and m >= 1");
  Rng rng(seed);
  Mat vectors(n, m);
  for (int j = 0; j < m; ++j) {
    Vec v = rng.gaussian_vector(n, field);
    while (v.norm() <= 1e-12) v = rng.gaussian_vector(n, field);
    vectors.col(j) = v / v.norm();
  }
  std::string label =
      field == Field::Real ? "random_real" : "random_complex";
  return make_frame(field, vectors, label);
}

FrameSpec gen_harmonic(int n, int m) {
  if (n < 1 || m < n) fail(ErrorKind::BadArgument, "need m >= n >= 1");
  Mat vectors(n, m);
  double root = std::sqrt(static_cast<double>(n));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < n; ++k)
      vectors(k, j) =
          std::polar(1.0 / root, 2.0 * M_PI * j * k / m);
  return make_frame(Field::Complex, vectors, "harmonic");
}

FrameSpec generate_frame(const std::string& kind, int n, int m, Field field,
                         std::uint64_t seed) {
  if (kind == "onb") return gen_onb(n, field);
  if (kind == "mercedes") return gen_mercedes();
  if (kind == "random_real") return gen_random(n, m, Field::Real, seed);
  if (kind == "random_complex") return gen_random(n, m, Field::Complex, seed);
  if (kind == "harmonic") return gen_harmonic(n, m);
  fail(ErrorKind::BadArgument, "unknown generator kind: " + kind);
}

}  // namespace framelab
