// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace repsim {

// Full run description. Defaults reproduce the headline comparison: 28 GHz,
// 30 dBm transmit power, a 64-antenna base station feeding an 8-antenna donor
// panel at 200 m, two 8-antenna service panels over a 100 m cell, 10
// terminals, 8 subchannels, 6 slots per panel, lambda = -1.
struct RunConfig {
    double frequency = 28e9;       // Hz
    double tx_power_dbm = 30.0;    // sigma_s^2
    int bs_antennas = 64;          // M_b
    int asr_antennas = 8;          // per service panel, and the donor panel
    int sr_antennas = 16;          // single-panel baseline, hardware parity
    double radius = 100.0;         // service cell radius, m
    double min_ue_radius = 10.0;   // terminals keep this standoff, m
    double bs_asr_distance = 200.0; // m
    double noise_asr_dbm = -85.0;  // repeater input noise
    double noise_ue_dbm = -90.0;   // terminal noise
    int num_ues = 10;              // K
    int num_subchannels = 8;       // N
    int num_slots = 6;             // Q, per panel
    double lambda = -1.0;
    double eta_start = 0.5;        // QoS sweep grid, bit/s/Hz
    double eta_stop = 8.0;
    double eta_step = 0.5;
    int trials = 500;
    std::uint64_t seed = 1;
    int codebook_levels = 8;       // L
    int grid_points = 120;         // D
    std::string mode = "both";     // asr | sr | both
    std::string capacity_mode = "global_n"; // or per_beam_n
    std::string exec = "parallel"; // or serial

    void validate() const; // throws ConfigError
    std::vector<double> eta_grid() const;
};

// Plain-text `key = value` file; '#' starts a comment. Unknown keys are
// rejected so typos fail loudly.
RunConfig load_config(const std::string &path);

// Applies one `key=value` override on top of an existing config (CLI flags).
void apply_override(RunConfig &cfg, const std::string &key,
                    const std::string &value);

// Key/value echo of every setting, used by the run manifest.
std::vector<std::pair<std::string, std::string>> config_items(const RunConfig &cfg);

} // namespace repsim
