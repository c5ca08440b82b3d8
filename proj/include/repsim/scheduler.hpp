// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstdint>
#include <string>
#include <vector>

#include "repsim/linkmetrics.hpp"

namespace repsim {

// Subchannel budget semantics: `global_n` caps the total served count at N
// (the printed constraint); `per_beam_n` gives every activated beam its own
// N-subchannel budget.
enum class CapacityMode { global_n, per_beam_n };

struct ProblemInstance {
    int n_ues = 0;
    int n_beams = 0;
    std::vector<std::vector<std::uint8_t>> feasible; // K x B, QoS + panel match
    std::vector<int> panel_of_beam;                  // 0 or 1 per beam
    arma::mat rate; // K x B achieved rates; may be empty when only solving
    int n_subchannels = 1;
    int q_slots = 0;
    double lambda = 0.0;
    CapacityMode capacity_mode = CapacityMode::global_n;

    void validate() const;
};

ProblemInstance make_instance(const FeasibilityTable &table, int n_subchannels,
                              int q_slots, double lambda,
                              CapacityMode mode = CapacityMode::global_n);

struct ScheduleSolution {
    std::vector<int> assignment;   // per terminal: beam id, or -1 if unserved
    std::vector<int> active_beams; // sorted ascending
    int served_count = 0;
    double objective = 0.0;        // served_count - lambda * |active_beams|
    int per_panel_slots[2] = {0, 0};
};

// Exhaustive search over beam-activation sets with exact assignment per set.
// Testing oracle only: refuses instances with more than 16 beams or 12
// terminals. Ties: higher served count, fewer active beams, lexicographically
// smallest active set, lowest served terminal indices.
ScheduleSolution solve_bruteforce(const ProblemInstance &inst);

// Exact branch-and-bound over beam activations, any size. Identical
// tie-breaking to the oracle.
ScheduleSolution solve_exact(const ProblemInstance &inst);

// Max-coverage greedy: repeatedly activates the beam with the best marginal
// newly-served count minus lambda. Feasible but not optimal in general.
ScheduleSolution solve_greedy(const ProblemInstance &inst);

// Independent literal re-check of every constraint and of the bookkeeping
// fields. On failure returns false and, if `why` is given, the reason.
bool check_solution(const ProblemInstance &inst, const ScheduleSolution &sol,
                    std::string *why = nullptr);

} // namespace repsim
