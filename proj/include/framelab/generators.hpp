#pragma once

#include <cstdint>
#include <string>

#include "framelab/frame.hpp"

namespace framelab {

FrameSpec gen_onb(int n, Field field);

// Three unit vectors of R^2 at angles 0, 120, 240 degrees: the smallest
// equal-norm tight frame, A = B = 3/2.
FrameSpec gen_mercedes();

// Columns drawn from the standard gaussian of the field, then normalized.
FrameSpec gen_random(int n, int m, Field field, std::uint64_t seed);

// x_j[k] = exp(2 pi i j k / m) / sqrt(n): m rows of the order-m Fourier
// matrix restricted to n coordinates; tight with A = B = m / n.
FrameSpec gen_harmonic(int n, int m);

// Dispatch by name: onb, mercedes, random_real, random_complex, harmonic.
FrameSpec generate_frame(const std::string& kind, int n, int m, Field field,
                         std::uint64_t seed);

}  // namespace framelab
