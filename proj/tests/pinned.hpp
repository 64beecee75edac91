// pinned.hpp: regression constants frozen from the first computation.

#pragma once

#include <array>

namespace fconv::testing {

// Depletion scan, theta = pi/2, pump |1>, |alpha_s| = 2, 3, 4, 5 at the
// policy cutoffs (signal 23/35/48/64). Agree with the Poisson average
// sum_n P(n) sin^2(theta sqrt(n+1) / alpha_s) to ~1e-12.
inline constexpr std::array<double, 4> kDepletionAlphaS = {2.0, 3.0, 4.0, 5.0};
inline constexpr std::array<double, 4> kDepletionFidelity = {
    0.86872983424861627, 0.93633733311268763, 0.96303011120978554, 0.97598231097643295};

}  // namespace fconv::testing
