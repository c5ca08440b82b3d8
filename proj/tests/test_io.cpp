// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "repsim/config.hpp"
#include "repsim/errors.hpp"
#include "repsim/instance_gen.hpp"
#include "repsim/instance_io.hpp"
#include "repsim/scheduler.hpp"

using namespace repsim;

namespace {

std::filesystem::path scratch_dir() {
    auto p = std::filesystem::temp_directory_path() / "repsim_io_test";
    std::filesystem::create_directories(p);
    return p;
}

void write_file(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p);
    out << text;
}

} // namespace

TEST_CASE("instances round-trip through JSON") {
    std::mt19937_64 g(99);
    auto path = (scratch_dir() / "inst.json").string();
    for (int it = 0; it < 25; ++it) {
        ProblemInstance a = random_instance(g, 8, 10);
        save_instance(path, a);
        ProblemInstance b = load_instance(path);
        CHECK(a.n_ues == b.n_ues);
        CHECK(a.n_beams == b.n_beams);
        CHECK(a.feasible == b.feasible);
        CHECK(a.panel_of_beam == b.panel_of_beam);
        CHECK(a.n_subchannels == b.n_subchannels);
        CHECK(a.q_slots == b.q_slots);
        CHECK(a.lambda == b.lambda);
        CHECK(a.capacity_mode == b.capacity_mode);
        CHECK(a.rate.n_elem == b.rate.n_elem);
    }
}

TEST_CASE("instance JSON carries the optional rate matrix") {
    ProblemInstance inst;
    inst.n_ues = 2;
    inst.n_beams = 2;
    inst.feasible = {{1, 0}, {0, 1}};
    inst.panel_of_beam = {0, 1};
    inst.n_subchannels = 2;
    inst.q_slots = 1;
    inst.rate = arma::mat{{3.5, 0.0}, {0.0, 4.25}};
    std::string text = instance_to_json(inst);
    ProblemInstance back = instance_from_json(text);
    REQUIRE(back.rate.n_rows == 2);
    CHECK(back.rate(0, 0) == 3.5);
    CHECK(back.rate(1, 1) == 4.25);
}

TEST_CASE("malformed instance files raise typed errors") {
    CHECK_THROWS_AS(load_instance("/nonexistent/nowhere.json"), IoError);
    CHECK_THROWS_AS(instance_from_json("this is not json"), ConfigError);
    CHECK_THROWS_AS(instance_from_json("{\"n_ues\": 1}"), ConfigError);
    // shape lie: 2 terminals declared, 1 feasibility row given
    CHECK_THROWS_AS(
        instance_from_json(R"({"n_ues": 2, "n_beams": 1,
            "feasible": [[1]], "panel_of_beam": [0],
            "n_subchannels": 1, "q_slots": 1, "lambda": 0.0,
            "capacity_mode": "global_n"})"),
        ConfigError);
    CHECK_THROWS_AS(
        instance_from_json(R"({"n_ues": 1, "n_beams": 1,
            "feasible": [[1]], "panel_of_beam": [0],
            "n_subchannels": 1, "q_slots": 1, "lambda": 0.0,
            "capacity_mode": "sideways"})"),
        ConfigError);
}

TEST_CASE("solution JSON exposes the schedule fields") {
    ProblemInstance inst;
    inst.n_ues = 1;
    inst.n_beams = 1;
    inst.feasible = {{1}};
    inst.panel_of_beam = {0};
    inst.n_subchannels = 1;
    inst.q_slots = 1;
    inst.lambda = -1.0;
    ScheduleSolution s = solve_exact(inst);
    std::string text = solution_to_json(s);
    CHECK(text.find("\"assignment\"") != std::string::npos);
    CHECK(text.find("\"active_beams\"") != std::string::npos);
    CHECK(text.find("\"served_count\"") != std::string::npos);
    CHECK(text.find("\"objective\"") != std::string::npos);
    CHECK(text.find("\"per_panel_slots\"") != std::string::npos);
}

TEST_CASE("config files parse with comments and fail on typos") {
    auto dir = scratch_dir();
    auto good = dir / "good.cfg";
    write_file(good, "# headline setup\n"
                     "frequency = 28e9\n"
                     "num_ues = 40\n\n"
                     "lambda = -1  # slot reward\n"
                     "capacity_mode = per_beam_n\n");
    RunConfig cfg = load_config(good.string());
    CHECK(cfg.frequency == 28e9);
    CHECK(cfg.num_ues == 40);
    CHECK(cfg.lambda == -1.0);
    CHECK(cfg.capacity_mode == "per_beam_n");
    // untouched keys keep their defaults
    CHECK(cfg.bs_antennas == 64);
    CHECK(cfg.num_subchannels == 8);
    CHECK(cfg.trials == 500);

    auto typo = dir / "typo.cfg";
    write_file(typo, "frequnecy = 28e9\n");
    CHECK_THROWS_AS(load_config(typo.string()), ConfigError);

    auto garbled = dir / "garbled.cfg";
    write_file(garbled, "num_ues equals ten\n");
    CHECK_THROWS_AS(load_config(garbled.string()), ConfigError);

    CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), IoError);
}

TEST_CASE("overrides apply on top of a config") {
    RunConfig cfg;
    apply_override(cfg, "num_ues", "25");
    apply_override(cfg, "eta_stop", "12.5");
    apply_override(cfg, "mode", "asr");
    apply_override(cfg, "seed", "31337");
    CHECK(cfg.num_ues == 25);
    CHECK(cfg.eta_stop == 12.5);
    CHECK(cfg.mode == "asr");
    CHECK(cfg.seed == 31337);
    CHECK_THROWS_AS(apply_override(cfg, "no_such_key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "num_ues", "many"), ConfigError);
}

TEST_CASE("config validation enforces the hardware parity and grid rules") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    RunConfig bad = cfg;
    bad.sr_antennas = 12; // baseline must match 2x the per-panel count
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.grid_points = 100; // not divisible by the level count
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.mode = "neither";
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.capacity_mode = "sideways";
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.eta_step = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    bad = cfg;
    bad.trials = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("the QoS grid walks start to stop inclusively") {
    RunConfig cfg;
    cfg.eta_start = 0.5;
    cfg.eta_stop = 8.0;
    cfg.eta_step = 0.5;
    auto grid = cfg.eta_grid();
    REQUIRE(grid.size() == 16);
    CHECK(grid.front() == doctest::Approx(0.5));
    CHECK(grid.back() == doctest::Approx(8.0));

    cfg.eta_start = 1.0;
    cfg.eta_stop = 17.0;
    cfg.eta_step = 1.0;
    CHECK(cfg.eta_grid().size() == 17);
}

TEST_CASE("config echo lists every key for the manifest") {
    RunConfig cfg;
    auto items = config_items(cfg);
    REQUIRE(items.size() >= 20);
    bool saw_freq = false, saw_mode = false;
    for (const auto &[k, v] : items) {
        if (k == "frequency") saw_freq = true;
        if (k == "capacity_mode") {
            saw_mode = true;
            CHECK(v == "global_n");
        }
    }
    CHECK(saw_freq);
    CHECK(saw_mode);
}
