// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace repsim {

// Spatial layout: relay at the origin, donor node behind it (azimuth 180 deg),
// two service panels facing boresights -60 and +60 deg. Each panel covers a
// 120 deg sector; the two sectors tile [-120, 120] deg with no overlap.
struct Scenario {
    double bs_asr_distance = 200.0; // donor link length, meters
    double service_radius = 100.0;  // outer radius of the service area, meters
    double min_ue_radius = 10.0;    // terminals never drop closer than this
    double panel_boresight_deg[2] = {-60.0, +60.0};
    double sector_width_deg = 120.0;
    int max_ue_count = 10;
    std::uint64_t rng_seed = 1;

    // Throws std::invalid_argument when the layout breaks its invariants
    // (sector width, boresight separation, radius ordering).
    void validate() const;
};

struct UeDrop {
    std::vector<double> range_m;      // distance from the relay
    std::vector<double> azimuth_deg;  // global frame, in [-120, 120]
    std::vector<int> panel_of;        // 0 or 1
    int count() const { return static_cast<int>(range_m.size()); }
};

// Panel whose sector contains `azimuth_deg`; the shared boundary at 0 deg
// belongs to panel 0. Throws std::invalid_argument outside [-120, 120].
int panel_of_azimuth(const Scenario &sc, double azimuth_deg);

// k terminals uniform in area over the 240 deg annulus
// (radius^2 uniform in [min_ue_radius^2, service_radius^2]).
// Draw order per terminal: azimuth, then radius. The generator form leaves
// `g` positioned after the 2k draws so callers can keep sampling the same
// stream; the seed form is shorthand for a fresh generator.
UeDrop drop_ues(const Scenario &sc, int k, std::mt19937_64 &g);
UeDrop drop_ues(const Scenario &sc, int k, std::uint64_t seed);

// Azimuth of terminal k relative to its serving panel's boresight, in [-60, 60].
double ue_azimuth_in_panel_frame(const Scenario &sc, const UeDrop &drop, int k);

} // namespace repsim
