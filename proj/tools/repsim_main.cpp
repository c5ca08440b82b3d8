// SPDX-License-Identifier: Apache-2.0
//
// Command line front end:
//   repsim simulate        QoS sweep -> plotdata.csv + manifest.json
//   repsim codebook export beam pattern table -> CSV
//   repsim schedule solve  one JSON instance -> solution JSON on stdout
//   repsim oracle-check    randomized exact-vs-oracle consistency sweep
//
// Exit codes: 0 ok, 2 bad configuration or arguments, 3 numeric/solver
// failure, 4 file I/O failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "repsim/channel.hpp"
#include "repsim/codebook.hpp"
#include "repsim/config.hpp"
#include "repsim/errors.hpp"
#include "repsim/experiment.hpp"
#include "repsim/instance_gen.hpp"
#include "repsim/instance_io.hpp"
#include "repsim/linkmetrics.hpp"
#include "repsim/scheduler.hpp"
#include "repsim/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct SimulateArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    std::string dump_channels;
    std::string dump_feasibility;
};

repsim::RunConfig resolve_config(const SimulateArgs &args) {
    repsim::RunConfig cfg;
    if (!args.config_path.empty()) cfg = repsim::load_config(args.config_path);
    for (const std::string &ov : args.overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw repsim::ConfigError("--set expects key=value, got '" + ov + "'");
        repsim::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

void dump_channels_csv(const repsim::RunConfig &cfg, const std::string &path) {
    const repsim::Scenario sc = repsim::scenario_of(cfg);
    const repsim::TrialDraw draw = repsim::draw_trial(cfg, sc, 0);
    std::ofstream out(path);
    if (!out) throw repsim::IoError("cannot open '" + path + "' for writing");
    out << "ue,panel,range_m,azimuth_deg,aod_panel_deg,asr_gain_db,sr_gain_db\n";
    char buf[256];
    for (int k = 0; k < cfg.num_ues; ++k) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      k, draw.drop.panel_of[k], draw.drop.range_m[k],
                      draw.drop.azimuth_deg[k], draw.asr[k].aod_at_panel_deg,
                      repsim::lin2db(std::norm(draw.asr[k].path_gain)),
                      repsim::lin2db(std::norm(draw.sr[k].path_gain)));
        out << buf;
    }
    if (!out) throw repsim::IoError("write failure on '" + path + "'");
}

void dump_feasibility_csv(const repsim::RunConfig &cfg, const std::string &path) {
    const repsim::Scenario sc = repsim::scenario_of(cfg);
    const repsim::TrialDraw draw = repsim::draw_trial(cfg, sc, 0);
    const repsim::LinkBudget budget = repsim::budget_of(cfg);
    const repsim::AngleGrid grid =
        repsim::build_grid(cfg.grid_points, cfg.codebook_levels);
    const repsim::Codebook book =
        repsim::build_codebook(grid, cfg.asr_antennas, repsim::Exec::serial);
    const std::vector<const repsim::Codebook *> books = {&book, &book};
    const repsim::FeasibilityTable t = repsim::build_feasibility(
        draw.drop, draw.asr, books, budget, cfg.eta_start, repsim::Exec::serial);
    std::ofstream out(path);
    if (!out) throw repsim::IoError("cannot open '" + path + "' for writing");
    out << "ue,beam,panel,level,snr_db,rate,feasible\n";
    char buf[256];
    for (int k = 0; k < t.n_ues; ++k)
        for (int b = 0; b < t.n_beams; ++b) {
            const repsim::BeamEntry &entry =
                book.beams[b % static_cast<int>(book.beams.size())];
            std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.10g,%.10g,%d\n", k, b,
                          t.panel_of_beam[b], entry.level,
                          repsim::lin2db(t.snr(k, b)), t.rate(k, b),
                          static_cast<int>(t.feasible[k][b]));
            out << buf;
        }
    if (!out) throw repsim::IoError("write failure on '" + path + "'");
}

int run_simulate(const SimulateArgs &args) {
    const repsim::RunConfig cfg = resolve_config(args);
    const repsim::SweepResult res = repsim::run_sweep(cfg);
    repsim::write_plotdata(res, args.out_dir);
    if (!args.dump_channels.empty()) dump_channels_csv(cfg, args.dump_channels);
    if (!args.dump_feasibility.empty())
        dump_feasibility_csv(cfg, args.dump_feasibility);
    std::printf("wrote %s/plotdata.csv (%zu systems x %zu QoS points, %d trials)\n",
                args.out_dir.c_str(), res.systems.size(), res.etas.size(),
                cfg.trials);
    return kExitOk;
}

struct CodebookArgs {
    int antennas = 8;
    int levels = 8;
    int grid_points = 120;
    double theta_step = 0.25;
    bool dft = false;
    std::string out = "codebook.csv";
};

int run_codebook_export(const CodebookArgs &args) {
    if (args.theta_step <= 0)
        throw repsim::ConfigError("--theta-step must be positive");
    repsim::Codebook book;
    if (args.dft) {
        book = repsim::build_dft_codebook(args.antennas);
    } else {
        const repsim::AngleGrid grid =
            repsim::build_grid(args.grid_points, args.levels);
        book = repsim::build_codebook(grid, args.antennas, repsim::Exec::parallel);
    }
    std::ofstream out(args.out);
    if (!out) throw repsim::IoError("cannot open '" + args.out + "' for writing");
    out << "beam_id,level,theta_deg,gain_db\n";
    char buf[128];
    for (const repsim::BeamEntry &beam : book.beams) {
        for (double th = -60.0; th <= 60.0 + 1e-9; th += args.theta_step) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g\n", beam.beam_id,
                          beam.level, th,
                          repsim::lin2db(repsim::beam_gain(beam, th)));
            out << buf;
        }
    }
    if (!out) throw repsim::IoError("write failure on '" + args.out + "'");
    std::printf("wrote %s (%zu beams)\n", args.out.c_str(), book.beams.size());
    return kExitOk;
}

int run_schedule_solve(const std::string &path, const std::string &solver) {
    const repsim::ProblemInstance inst = repsim::load_instance(path);
    repsim::ScheduleSolution sol;
    if (solver == "exact")
        sol = repsim::solve_exact(inst);
    else if (solver == "bruteforce")
        sol = repsim::solve_bruteforce(inst);
    else if (solver == "greedy")
        sol = repsim::solve_greedy(inst);
    else
        throw repsim::ConfigError("--solver must be exact, bruteforce, or greedy");
    std::string why;
    if (!repsim::check_solution(inst, sol, &why))
        throw repsim::NumericError("solver returned an invalid schedule: " + why);
    std::cout << repsim::solution_to_json(sol) << "\n";
    return kExitOk;
}

struct OracleArgs {
    int instances = 1000;
    int max_ues = 10;
    int max_beams = 14;
    std::uint64_t seed = 2024;
};

int run_oracle_check(const OracleArgs &args) {
    if (args.instances < 1) throw repsim::ConfigError("--instances must be >= 1");
    if (args.max_ues < 2 || args.max_ues > 12)
        throw repsim::ConfigError("--max-ues must be in [2, 12]");
    if (args.max_beams < 2 || args.max_beams > 16)
        throw repsim::ConfigError("--max-beams must be in [2, 16]");
    std::mt19937_64 g(args.seed);
    for (int i = 0; i < args.instances; ++i) {
        const repsim::ProblemInstance inst =
            repsim::random_instance(g, args.max_ues, args.max_beams);
        const repsim::ScheduleSolution oracle = repsim::solve_bruteforce(inst);
        const repsim::ScheduleSolution fast = repsim::solve_exact(inst);
        std::string why;
        if (!repsim::check_solution(inst, oracle, &why))
            throw repsim::NumericError("oracle produced an invalid schedule: " + why);
        if (!repsim::check_solution(inst, fast, &why))
            throw repsim::NumericError("solver produced an invalid schedule: " + why);
        if (oracle.objective != fast.objective ||
            oracle.served_count != fast.served_count ||
            oracle.active_beams != fast.active_beams ||
            oracle.assignment != fast.assignment) {
            std::fprintf(stderr, "mismatch on instance %d:\n%s\n", i,
                         repsim::instance_to_json(inst).c_str());
            throw repsim::NumericError("branch-and-bound disagrees with the oracle");
        }
        const repsim::ScheduleSolution greedy = repsim::solve_greedy(inst);
        if (!repsim::check_solution(inst, greedy, &why))
            throw repsim::NumericError("greedy produced an invalid schedule: " + why);
        if (greedy.objective > fast.objective + 1e-12)
            throw repsim::NumericError("greedy beat the exact solver");
    }
    std::printf("oracle-check: %d instances, exact matches the oracle on all\n",
                args.instances);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"link-level simulator for a tri-sector analog-beam repeater"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App *simulate = app.add_subcommand(
        "simulate", "run the QoS sweep and write plot data");
    simulate->add_option("--config", sim.config_path, "key = value config file");
    simulate->add_option("--set", sim.overrides,
                         "override one config key, e.g. --set num_ues=40");
    simulate->add_option("--out", sim.out_dir, "output directory");
    simulate->add_option("--dump-channels", sim.dump_channels,
                         "also write trial-0 terminal positions and path gains");
    simulate->add_option("--dump-feasibility", sim.dump_feasibility,
                         "also write the trial-0 link table at eta_start");

    CodebookArgs cb;
    CLI::App *codebook = app.add_subcommand("codebook", "codebook utilities");
    codebook->require_subcommand(1);
    CLI::App *cb_export =
        codebook->add_subcommand("export", "write beam gain patterns as CSV");
    cb_export->add_option("--antennas", cb.antennas, "array elements");
    cb_export->add_option("--levels", cb.levels, "codebook levels");
    cb_export->add_option("--grid-points", cb.grid_points, "design grid size");
    cb_export->add_option("--theta-step", cb.theta_step, "pattern sample step, deg");
    cb_export->add_flag("--dft", cb.dft, "export the single-level DFT codebook");
    cb_export->add_option("--out", cb.out, "output CSV path");

    std::string sched_path, sched_solver = "exact";
    CLI::App *schedule = app.add_subcommand("schedule", "scheduling utilities");
    schedule->require_subcommand(1);
    CLI::App *solve =
        schedule->add_subcommand("solve", "solve one JSON instance");
    solve->add_option("instance", sched_path, "instance JSON file")->required();
    solve->add_option("--solver", sched_solver, "exact | bruteforce | greedy");

    OracleArgs oc;
    CLI::App *oracle = app.add_subcommand(
        "oracle-check", "cross-check the solver against exhaustive search");
    oracle->add_option("--instances", oc.instances, "number of random instances");
    oracle->add_option("--max-ues", oc.max_ues, "terminal count cap (<= 12)");
    oracle->add_option("--max-beams", oc.max_beams, "beam count cap (<= 16)");
    oracle->add_option("--seed", oc.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (cb_export->parsed()) return run_codebook_export(cb);
        if (solve->parsed()) return run_schedule_solve(sched_path, sched_solver);
        if (oracle->parsed()) return run_oracle_check(oc);
        return kExitConfig;
    } catch (const repsim::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const repsim::IoError &e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const repsim::NumericError &e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
}
