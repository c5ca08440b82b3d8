// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "repsim/channel.hpp"
#include "repsim/codebook.hpp"
#include "repsim/config.hpp"
#include "repsim/geometry.hpp"
#include "repsim/linkmetrics.hpp"
#include "repsim/scheduler.hpp"

namespace repsim {

Scenario scenario_of(const RunConfig &cfg);
LinkBudget budget_of(const RunConfig &cfg);

// One Monte Carlo draw: a terminal drop shared by both systems, plus paired
// channel realizations (identical positions and path phases; only the serving
// panel's element count differs).
struct TrialDraw {
    UeDrop drop;
    std::vector<ChannelRealization> asr;
    std::vector<ChannelRealization> sr;
};

TrialDraw draw_trial(const RunConfig &cfg, const Scenario &sc,
                     std::uint64_t trial_index);

struct TrialStats {
    int served = 0;
    int active = 0;
    double sum_rate = 0.0;
};

struct SystemSweep {
    std::string name;                           // "asr" or "sr"
    std::vector<std::vector<TrialStats>> stats; // [eta index][trial]
};

struct SweepResult {
    RunConfig cfg;
    std::vector<double> etas;
    std::vector<SystemSweep> systems;
};

// Full QoS sweep. Trials run in parallel when cfg.exec is "parallel"; each
// trial writes only its own slots and the aggregation is serial, so the
// output is identical across thread counts.
SweepResult run_sweep(const RunConfig &cfg);

// plotdata.csv (system, eta, mean served, mean sum rate, 95% intervals,
// mean active beams) and manifest.json under out_dir.
void write_plotdata(const SweepResult &res, const std::string &out_dir);

// Sample mean and normal-approximation 95% half-width.
std::pair<double, double> mean_ci(const std::vector<double> &xs);

} // namespace repsim
