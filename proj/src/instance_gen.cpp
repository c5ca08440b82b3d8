// SPDX-License-Identifier: Apache-2.0
#include "repsim/instance_gen.hpp"

namespace repsim {

ProblemInstance random_instance(std::mt19937_64 &g, int max_ues, int max_beams) {
    ProblemInstance inst;
    inst.n_ues = randint(g, 2, max_ues);
    inst.n_beams = randint(g, 2, max_beams);
    const double density[] = {0.15, 0.3, 0.5, 0.8};
    const double p = density[randint(g, 0, 3)];
    inst.feasible.assign(inst.n_ues,
                         std::vector<std::uint8_t>(inst.n_beams, 0));
    for (int k = 0; k < inst.n_ues; ++k)
        for (int b = 0; b < inst.n_beams; ++b)
            inst.feasible[k][b] =
                (static_cast<double>(g() >> 11) * 0x1.0p-53 < p) ? 1 : 0;
    inst.panel_of_beam.resize(inst.n_beams);
    for (int b = 0; b < inst.n_beams; ++b)
        inst.panel_of_beam[b] = randint(g, 0, 1);
    inst.n_subchannels = randint(g, 1, 8);
    inst.q_slots = randint(g, 0, 2);
    const double lambdas[] = {-1.0, 0.0, 1.0};
    inst.lambda = lambdas[randint(g, 0, 2)];
    inst.capacity_mode =
        randint(g, 0, 1) ? CapacityMode::per_beam_n : CapacityMode::global_n;
    return inst;
}

} // namespace repsim
