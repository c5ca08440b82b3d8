// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "repsim/scheduler.hpp"

namespace repsim {

// Uniform integer in [lo, hi] drawn portably from the raw engine output
// (std::uniform_int_distribution is implementation-defined, which would make
// cross-platform reruns disagree).
inline int randint(std::mt19937_64 &g, int lo, int hi) {
    return lo + static_cast<int>(g() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random scheduling instance for solver cross-checks: 2..max_ues terminals,
// 2..max_beams beams over two panels, mixed feasibility density, N in 1..8,
// Q in 0..2, lambda in {-1, 0, 1}, either capacity mode.
ProblemInstance random_instance(std::mt19937_64 &g, int max_ues, int max_beams);

} // namespace repsim
