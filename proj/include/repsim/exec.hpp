// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace repsim {

// Execution policy for the data-parallel kernels (codebook synthesis,
// feasibility tables, Monte Carlo trials). Every kernel writes result i into
// its own pre-sized slot, so serial and parallel runs are bit-identical.
enum class Exec { serial, parallel };

template <typename F>
void for_each_index(Exec mode, std::int64_t n, F &&fn) {
    if (mode == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < n; ++i)
            fn(i);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            fn(i);
    }
}

} // namespace repsim
