// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "repsim/scheduler.hpp"

namespace repsim {

// JSON on-disk form of a scheduling instance. Keys: n_ues, n_beams, feasible
// (K rows of 0/1), panel_of_beam, n_subchannels, q_slots, lambda,
// capacity_mode ("global_n"/"per_beam_n"), optional rate (K rows of doubles).
ProblemInstance load_instance(const std::string &path);
void save_instance(const std::string &path, const ProblemInstance &inst);

std::string instance_to_json(const ProblemInstance &inst);
ProblemInstance instance_from_json(const std::string &text);

// Solution rendering for the CLI: assignment, active beams, served count,
// objective, per-panel slot usage.
std::string solution_to_json(const ScheduleSolution &sol);

} // namespace repsim
