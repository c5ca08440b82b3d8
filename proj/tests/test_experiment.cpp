// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "repsim/experiment.hpp"
#include "repsim/rng.hpp"

using namespace repsim;

namespace {

RunConfig small_cfg() {
    RunConfig cfg;
    cfg.num_ues = 5;
    cfg.trials = 6;
    cfg.eta_start = 2.0;
    cfg.eta_stop = 6.0;
    cfg.eta_step = 2.0;
    cfg.seed = 17;
    return cfg;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("seed derivation separates streams deterministically") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    // neighbouring trials decorrelate: the raw outputs differ in many bits
    const std::uint64_t a = derive_seed(42, 7) ^ derive_seed(42, 8);
    int bits = 0;
    for (int i = 0; i < 64; ++i) bits += (a >> i) & 1u;
    CHECK(bits > 10);
}

TEST_CASE("scenario and budget inherit the run configuration") {
    RunConfig cfg = small_cfg();
    cfg.radius = 80.0;
    cfg.min_ue_radius = 12.0;
    Scenario sc = scenario_of(cfg);
    CHECK(sc.service_radius == 80.0);
    CHECK(sc.min_ue_radius == 12.0);
    CHECK(sc.max_ue_count == 5);
    CHECK(sc.rng_seed == 17);

    LinkBudget bud = budget_of(cfg);
    CHECK(bud.p0_antennas == cfg.asr_antennas);
    CHECK(bud.g_sq * std::norm(bud.beta) == doctest::Approx(1.0));
}

TEST_CASE("paired trials share geometry and phases across systems") {
    RunConfig cfg = small_cfg();
    Scenario sc = scenario_of(cfg);
    TrialDraw d = draw_trial(cfg, sc, 3);
    REQUIRE(static_cast<int>(d.asr.size()) == cfg.num_ues);
    REQUIRE(static_cast<int>(d.sr.size()) == cfg.num_ues);
    for (int k = 0; k < cfg.num_ues; ++k) {
        CHECK(d.asr[k].h.n_elem == 8);
        CHECK(d.sr[k].h.n_elem == 16);
        // identical position and path phase, different aperture only
        CHECK(d.asr[k].panel == d.sr[k].panel);
        CHECK(d.asr[k].aod_at_panel_deg == d.sr[k].aod_at_panel_deg);
        CHECK(std::abs(d.asr[k].path_gain - d.sr[k].path_gain) == 0.0);
    }
    // trial index changes everything
    TrialDraw e = draw_trial(cfg, sc, 4);
    CHECK(d.drop.azimuth_deg != e.drop.azimuth_deg);

    // and the same index reproduces the draw exactly
    TrialDraw d2 = draw_trial(cfg, sc, 3);
    CHECK(d.drop.azimuth_deg == d2.drop.azimuth_deg);
    CHECK(d.drop.range_m == d2.drop.range_m);
}

TEST_CASE("mean_ci matches hand numbers and shrinks with the sample") {
    auto [m, c] = mean_ci({1.0, 2.0, 3.0, 4.0});
    CHECK(m == doctest::Approx(2.5));
    // sample sd = sqrt(5/3), half-width = 1.96 * sd / 2
    CHECK(c == doctest::Approx(1.96 * std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));

    auto [m1, c1] = mean_ci(std::vector<double>(100, 7.5));
    CHECK(m1 == doctest::Approx(7.5));
    CHECK(c1 == 0.0);

    // 4x the sample roughly halves the interval
    std::vector<double> x1, x4;
    std::mt19937_64 g(5);
    for (int i = 0; i < 400; ++i) {
        const double v = uniform01(g);
        if (i < 100) x1.push_back(v);
        x4.push_back(v);
    }
    CHECK(mean_ci(x4).second < mean_ci(x1).second);

    auto [m0, c0] = mean_ci({});
    CHECK(m0 == 0.0);
    CHECK(c0 == 0.0);
}

TEST_CASE("a small sweep produces full, finite statistics") {
    RunConfig cfg = small_cfg();
    SweepResult res = run_sweep(cfg);
    REQUIRE(res.systems.size() == 2);
    CHECK(res.systems[0].name == "asr");
    CHECK(res.systems[1].name == "sr");
    REQUIRE(res.etas.size() == 3);
    for (const auto &sys : res.systems) {
        REQUIRE(sys.stats.size() == 3);
        for (const auto &per_eta : sys.stats) {
            REQUIRE(per_eta.size() == 6);
            for (const TrialStats &s : per_eta) {
                CHECK(s.served >= 0);
                CHECK(s.served <= cfg.num_ues);
                CHECK(s.active >= 0);
                CHECK(s.active <= 2 * cfg.num_slots);
                CHECK(std::isfinite(s.sum_rate));
                if (s.served == 0) CHECK(s.sum_rate == 0.0);
                if (s.served > 0) CHECK(s.sum_rate > 0.0);
            }
        }
    }

    // mode filters restrict the systems list
    RunConfig only = cfg;
    only.mode = "asr";
    SweepResult ra = run_sweep(only);
    REQUIRE(ra.systems.size() == 1);
    CHECK(ra.systems[0].name == "asr");
}

TEST_CASE("sweeps are reproducible and independent of the execution mode") {
    RunConfig cfg = small_cfg();
    cfg.exec = "parallel";
    SweepResult a = run_sweep(cfg);
    SweepResult b = run_sweep(cfg);
    cfg.exec = "serial";
    SweepResult c = run_sweep(cfg);

    for (std::size_t s = 0; s < a.systems.size(); ++s)
        for (std::size_t ei = 0; ei < a.etas.size(); ++ei)
            for (std::size_t t = 0; t < a.systems[s].stats[ei].size(); ++t) {
                const TrialStats &x = a.systems[s].stats[ei][t];
                const TrialStats &y = b.systems[s].stats[ei][t];
                const TrialStats &z = c.systems[s].stats[ei][t];
                CHECK(x.served == y.served);
                CHECK(x.active == y.active);
                CHECK(x.sum_rate == y.sum_rate);
                CHECK(x.served == z.served);
                CHECK(x.active == z.active);
                CHECK(x.sum_rate == z.sum_rate);
            }
}

TEST_CASE("plotdata lands on disk with the documented header") {
    RunConfig cfg = small_cfg();
    SweepResult res = run_sweep(cfg);
    auto dir = std::filesystem::temp_directory_path() / "repsim_exp_test";
    std::filesystem::remove_all(dir);
    write_plotdata(res, dir.string());

    const std::string csv = slurp(dir / "plotdata.csv");
    CHECK(csv.rfind("system,capacity_mode,lambda,eta_bar,trials,"
                    "served_mean,served_ci95,sumrate_mean,sumrate_ci95,"
                    "active_mean\n",
                    0) == 0);
    // one line per (system, eta) plus the header
    int lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 1 + 2 * 3);

    const std::string man = slurp(dir / "manifest.json");
    CHECK(man.find("\"config\"") != std::string::npos);
    CHECK(man.find("\"eta_grid\"") != std::string::npos);
    CHECK(man.find("\"plotdata.csv\"") != std::string::npos);

    // a second identical run writes byte-identical artifacts
    auto dir2 = std::filesystem::temp_directory_path() / "repsim_exp_test2";
    std::filesystem::remove_all(dir2);
    write_plotdata(run_sweep(cfg), dir2.string());
    CHECK(slurp(dir2 / "plotdata.csv") == csv);
}
