// SPDX-License-Identifier: Apache-2.0
//
// Wall-clock comparison of the serial reference kernels against the
// OpenMP-parallel paths. Speedups track the available cores: on a single-core
// host both columns land within noise of each other.
#include <chrono>
#include <cstdio>

#include "repsim/codebook.hpp"
#include "repsim/experiment.hpp"
#include "repsim/linkmetrics.hpp"

using namespace repsim;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F> double time_of(F &&fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const double s =
            std::chrono::duration<double>(clock_type::now() - t0).count();
        best = s < best ? s : best;
    }
    return best;
}

void row(const char *name, double serial_s, double parallel_s) {
    std::printf("%-22s %10.3f ms %10.3f ms %8.2fx\n", name, serial_s * 1e3,
                parallel_s * 1e3, serial_s / parallel_s);
}

} // namespace

int main() {
    RunConfig cfg;
    cfg.num_ues = 10;
    cfg.trials = 40;
    cfg.eta_start = 2.0;
    cfg.eta_stop = 10.0;
    cfg.eta_step = 2.0;

    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel",
                "speedup");

    const AngleGrid grid = build_grid(cfg.grid_points, cfg.codebook_levels);
    const double cb_ser = time_of(
        [&] { build_codebook(grid, cfg.asr_antennas, Exec::serial); }, 2);
    const double cb_par = time_of(
        [&] { build_codebook(grid, cfg.asr_antennas, Exec::parallel); }, 2);
    row("codebook build", cb_ser, cb_par);

    const Codebook book = build_codebook(grid, cfg.asr_antennas, Exec::parallel);
    const std::vector<const Codebook *> books{&book, &book};
    const Scenario sc = scenario_of(cfg);
    const LinkBudget bud = budget_of(cfg);
    const TrialDraw draw = draw_trial(cfg, sc, 0);
    const double ft_ser = time_of(
        [&] { build_feasibility(draw.drop, draw.asr, books, bud, 4.0,
                                Exec::serial); },
        5);
    const double ft_par = time_of(
        [&] { build_feasibility(draw.drop, draw.asr, books, bud, 4.0,
                                Exec::parallel); },
        5);
    row("link table (510 beams)", ft_ser, ft_par);

    RunConfig ser = cfg;
    ser.exec = "serial";
    RunConfig par = cfg;
    par.exec = "parallel";
    const double sw_ser = time_of([&] { run_sweep(ser); }, 1);
    const double sw_par = time_of([&] { run_sweep(par); }, 1);
    row("40-trial sweep", sw_ser, sw_par);

    return 0;
}
