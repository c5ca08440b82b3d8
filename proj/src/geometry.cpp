// SPDX-License-Identifier: Apache-2.0

#include "repsim/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "repsim/rng.hpp"

namespace repsim {

void Scenario::validate() const {
    if (sector_width_deg != 120.0)
        throw std::invalid_argument("Scenario: sector width must be 120 deg");
    if (std::abs(panel_boresight_deg[1] - panel_boresight_deg[0]) != 120.0)
        throw std::invalid_argument("Scenario: panel boresights must be 120 deg apart");
    if (!(min_ue_radius > 0.0) || !(min_ue_radius < service_radius))
        throw std::invalid_argument("Scenario: need 0 < min_ue_radius < service_radius");
    if (!(bs_asr_distance > 0.0))
        throw std::invalid_argument("Scenario: donor distance must be positive");
    if (max_ue_count < 0)
        throw std::invalid_argument("Scenario: max_ue_count must be >= 0");
}

int panel_of_azimuth(const Scenario &sc, double azimuth_deg) {
    const double half = sc.sector_width_deg / 2.0;
    const double lo = sc.panel_boresight_deg[0] - half;
    const double hi = sc.panel_boresight_deg[1] + half;
    if (azimuth_deg < lo || azimuth_deg > hi)
        throw std::invalid_argument("azimuth outside the serviced 240 deg span");
    // Boundary between the two sectors goes to panel 0.
    const double split = sc.panel_boresight_deg[0] + half;
    return azimuth_deg <= split ? 0 : 1;
}

UeDrop drop_ues(const Scenario &sc, int k, std::mt19937_64 &g) {
    sc.validate();
    if (k < 0)
        throw std::invalid_argument("drop_ues: k must be >= 0");

    const double half = sc.sector_width_deg / 2.0;
    const double az_lo = sc.panel_boresight_deg[0] - half;
    const double az_hi = sc.panel_boresight_deg[1] + half;
    const double r2_lo = sc.min_ue_radius * sc.min_ue_radius;
    const double r2_hi = sc.service_radius * sc.service_radius;

    UeDrop drop;
    drop.range_m.resize(k);
    drop.azimuth_deg.resize(k);
    drop.panel_of.resize(k);

    for (int i = 0; i < k; ++i) {
        const double az = uniform_in(g, az_lo, az_hi);
        const double r = std::sqrt(uniform_in(g, r2_lo, r2_hi)); // uniform in area
        drop.azimuth_deg[i] = az;
        drop.range_m[i] = r;
        drop.panel_of[i] = panel_of_azimuth(sc, az);
    }
    return drop;
}

UeDrop drop_ues(const Scenario &sc, int k, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    return drop_ues(sc, k, g);
}

double ue_azimuth_in_panel_frame(const Scenario &sc, const UeDrop &drop, int k) {
    if (k < 0 || k >= drop.count())
        throw std::invalid_argument("ue_azimuth_in_panel_frame: index out of range");
    return drop.azimuth_deg[k] - sc.panel_boresight_deg[drop.panel_of[k]];
}

} // namespace repsim
