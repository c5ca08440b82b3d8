// SPDX-License-Identifier: Apache-2.0
#include "repsim/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "repsim/errors.hpp"
#include "repsim/exec.hpp"
#include "repsim/rng.hpp"
#include "repsim/units.hpp"

namespace repsim {

Scenario scenario_of(const RunConfig &cfg) {
    Scenario sc;
    sc.bs_asr_distance = cfg.bs_asr_distance;
    sc.service_radius = cfg.radius;
    sc.min_ue_radius = cfg.min_ue_radius;
    sc.max_ue_count = cfg.num_ues;
    sc.rng_seed = cfg.seed;
    return sc;
}

LinkBudget budget_of(const RunConfig &cfg) {
    return bs_asr_beta(cfg.bs_antennas, cfg.asr_antennas, cfg.bs_asr_distance,
                       cfg.frequency, dbm2watt(cfg.tx_power_dbm),
                       dbm2watt(cfg.noise_asr_dbm), dbm2watt(cfg.noise_ue_dbm));
}

TrialDraw draw_trial(const RunConfig &cfg, const Scenario &sc,
                     std::uint64_t trial_index) {
    std::mt19937_64 g(derive_seed(cfg.seed, trial_index));
    TrialDraw d;
    d.drop = drop_ues(sc, cfg.num_ues, g);
    std::vector<double> phase(cfg.num_ues);
    for (int k = 0; k < cfg.num_ues; ++k) phase[k] = 2.0 * pi * uniform01(g);
    d.asr.reserve(cfg.num_ues);
    d.sr.reserve(cfg.num_ues);
    for (int k = 0; k < cfg.num_ues; ++k) {
        d.asr.push_back(
            ue_channel(sc, d.drop, k, cfg.asr_antennas, cfg.frequency, phase[k]));
        d.sr.push_back(
            ue_channel(sc, d.drop, k, cfg.sr_antennas, cfg.frequency, phase[k]));
    }
    return d;
}

namespace {

TrialStats score(const ScheduleSolution &sol, const ProblemInstance &inst) {
    TrialStats s;
    s.served = sol.served_count;
    s.active = static_cast<int>(sol.active_beams.size());
    for (int k = 0; k < inst.n_ues; ++k)
        if (sol.assignment[k] != -1) s.sum_rate += inst.rate(k, sol.assignment[k]);
    return s;
}

} // namespace

SweepResult run_sweep(const RunConfig &cfg) {
    cfg.validate();
    const Exec ex = cfg.exec == "parallel" ? Exec::parallel : Exec::serial;
    const CapacityMode cap = cfg.capacity_mode == "global_n"
                                 ? CapacityMode::global_n
                                 : CapacityMode::per_beam_n;
    Scenario sc = scenario_of(cfg);
    sc.validate();
    const LinkBudget budget = budget_of(cfg);
    const std::vector<double> etas = cfg.eta_grid();

    const bool want_asr = cfg.mode != "sr";
    const bool want_sr = cfg.mode != "asr";

    Codebook asr_book, sr_book;
    if (want_asr) {
        const AngleGrid grid = build_grid(cfg.grid_points, cfg.codebook_levels);
        asr_book = build_codebook(grid, cfg.asr_antennas, ex);
    }
    if (want_sr) sr_book = build_dft_codebook(cfg.sr_antennas);

    SweepResult res;
    res.cfg = cfg;
    res.etas = etas;
    if (want_asr) res.systems.push_back({"asr", {}});
    if (want_sr) res.systems.push_back({"sr", {}});
    for (auto &sys : res.systems)
        sys.stats.assign(etas.size(),
                         std::vector<TrialStats>(static_cast<std::size_t>(cfg.trials)));

    // The tri-sector system aims the same codebook out of both service
    // panels; the single-panel baseline only covers panel 0's sector.
    const std::vector<const Codebook *> asr_books = {&asr_book, &asr_book};
    const std::vector<const Codebook *> sr_books = {&sr_book};

    for_each_index(ex, static_cast<std::size_t>(cfg.trials), [&](std::size_t t) {
        const TrialDraw draw = draw_trial(cfg, sc, t);
        for (auto &sys : res.systems) {
            const bool is_asr = sys.name == "asr";
            const FeasibilityTable base = build_feasibility(
                draw.drop, is_asr ? draw.asr : draw.sr,
                is_asr ? asr_books : sr_books, budget, 0.0, Exec::serial);
            for (std::size_t ei = 0; ei < etas.size(); ++ei) {
                const FeasibilityTable table = with_threshold(base, etas[ei]);
                const ProblemInstance inst = make_instance(
                    table, cfg.num_subchannels, cfg.num_slots, cfg.lambda, cap);
                const ScheduleSolution sol = solve_exact(inst);
                sys.stats[ei][t] = score(sol, inst);
            }
        }
    });
    return res;
}

std::pair<double, double> mean_ci(const std::vector<double> &xs) {
    if (xs.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
    return {mean, 1.96 * std::sqrt(var / n)};
}

void write_plotdata(const SweepResult &res, const std::string &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");

    const std::string csv_path = out_dir + "/plotdata.csv";
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot open '" + csv_path + "' for writing");
    csv << "system,capacity_mode,lambda,eta_bar,trials,"
           "served_mean,served_ci95,sumrate_mean,sumrate_ci95,active_mean\n";
    char buf[512];
    for (const auto &sys : res.systems) {
        for (std::size_t ei = 0; ei < res.etas.size(); ++ei) {
            std::vector<double> served, rate, active;
            for (const TrialStats &s : sys.stats[ei]) {
                served.push_back(s.served);
                rate.push_back(s.sum_rate);
                active.push_back(s.active);
            }
            const auto [sm, sc_] = mean_ci(served);
            const auto [rm, rc] = mean_ci(rate);
            const auto [am, ac] = mean_ci(active);
            std::snprintf(buf, sizeof buf,
                          "%s,%s,%.10g,%.10g,%zu,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                          sys.name.c_str(), res.cfg.capacity_mode.c_str(),
                          res.cfg.lambda, res.etas[ei], sys.stats[ei].size(), sm,
                          sc_, rm, rc, am);
            csv << buf;
        }
    }
    if (!csv) throw IoError("write failure on '" + csv_path + "'");
    csv.close();

    nlohmann::json manifest;
    for (const auto &[k, v] : config_items(res.cfg)) manifest["config"][k] = v;
    manifest["eta_grid"] = res.etas;
    manifest["outputs"] = {"plotdata.csv"};
    const std::string man_path = out_dir + "/manifest.json";
    std::ofstream man(man_path);
    if (!man) throw IoError("cannot open '" + man_path + "' for writing");
    man << manifest.dump(2) << "\n";
    if (!man) throw IoError("write failure on '" + man_path + "'");
}

} // namespace repsim
