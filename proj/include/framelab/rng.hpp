#pragma once

#include <cstdint>
#include <random>

#include "framelab/types.hpp"

namespace framelab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Decorrelated seed for worker `index` of a run seeded with `seed`. Gives
// every multistart its own stream so results do not depend on scheduling.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(engine_);
  }

  double gaussian() {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(engine_);
  }

  std::uint64_t integer() { return engine_(); }

  // Index in [0, n).
  std::size_t index(std::size_t n) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    return d(engine_);
  }

  Vec gaussian_vector(Eigen::Index n, Field field) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = gaussian();
      const double im = field == Field::Complex ? gaussian() : 0.0;
      v(i) = Complex(re, im);
    }
    return v;
  }

  Vec unit_vector(Eigen::Index n, Field field) {
    for (;;) {
      Vec v = gaussian_vector(n, field);
      const double norm = v.norm();
      if (norm > 1e-12) return v / norm;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace framelab
