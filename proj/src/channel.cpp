// SPDX-License-Identifier: Apache-2.0

#include "repsim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "repsim/units.hpp"

namespace repsim {

arma::cx_vec steering(int m_antennas, double theta_deg) {
    if (m_antennas < 1)
        throw std::invalid_argument("steering: need at least one antenna");
    if (theta_deg < -90.0 || theta_deg > 90.0)
        throw std::invalid_argument("steering: theta outside [-90, 90] deg");
    const double s = std::sin(deg2rad(theta_deg));
    arma::cx_vec a(m_antennas);
    for (int m = 0; m < m_antennas; ++m)
        a[m] = std::polar(1.0, pi * m * s);
    return a;
}

std::complex<double> path_gain(double distance_m, double carrier_freq_hz,
                               double phase_rad) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("path_gain: distance must be positive");
    if (!(carrier_freq_hz > 0.0))
        throw std::invalid_argument("path_gain: frequency must be positive");
    const double amp = wavelength_m(carrier_freq_hz) / (4.0 * pi * distance_m);
    return std::polar(amp, phase_rad);
}

static double element_pattern(ElementPattern pattern, double theta_deg) {
    switch (pattern) {
    case ElementPattern::isotropic:
        return 1.0;
    case ElementPattern::cosine:
        // cos pattern clipped to the panel's 120 deg field of view
        return std::abs(theta_deg) <= 60.0 ? std::cos(deg2rad(theta_deg)) : 0.0;
    }
    return 1.0;
}

ChannelRealization ue_channel(const Scenario &sc, const UeDrop &drop, int k,
                              int panel_antennas, double freq_hz,
                              double phase_rad, ElementPattern pattern) {
    if (k < 0 || k >= drop.count())
        throw std::invalid_argument("ue_channel: index out of range");

    ChannelRealization cr;
    cr.panel = drop.panel_of[k];
    cr.aod_at_panel_deg = ue_azimuth_in_panel_frame(sc, drop, k);
    cr.path_gain = path_gain(drop.range_m[k], freq_hz, phase_rad);

    const double rho = element_pattern(pattern, cr.aod_at_panel_deg);
    const arma::cx_vec a = steering(panel_antennas, cr.aod_at_panel_deg);
    cr.h = cr.path_gain * rho * a.t(); // .t() on complex is the conjugate transpose
    return cr;
}

LinkBudget bs_asr_beta(int m_b, int m_r, double d_br, double freq_hz,
                       double sigma_s_sq_w, double sigma_n_sq_w,
                       double sigma_z_sq_w) {
    if (m_b < 1 || m_r < 1)
        throw std::invalid_argument("bs_asr_beta: antenna counts must be >= 1");
    if (!(sigma_s_sq_w > 0.0) || !(sigma_n_sq_w > 0.0) || !(sigma_z_sq_w > 0.0))
        throw std::invalid_argument("bs_asr_beta: powers must be positive");

    // Matched boresight beams on both ends of the static donor link make the
    // rank-1 LoS product coherent: |beta| = |alpha| * m_b * m_r.
    const std::complex<double> alpha = path_gain(d_br, freq_hz, 0.0);
    LinkBudget lb;
    lb.beta = alpha * static_cast<double>(m_b) * static_cast<double>(m_r);
    lb.g_sq = 1.0 / std::norm(lb.beta);
    lb.sigma_s_sq = sigma_s_sq_w;
    lb.sigma_n_sq = sigma_n_sq_w;
    lb.sigma_z_sq = sigma_z_sq_w;
    lb.p0_antennas = m_r;
    return lb;
}

} // namespace repsim
