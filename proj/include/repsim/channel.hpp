// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <complex>

#include "repsim/geometry.hpp"

namespace repsim {

enum class ElementPattern { isotropic, cosine };

// Array response of a half-wavelength ULA: element m = exp(j*pi*m*sin(theta)),
// m = 0..M-1. Throws std::invalid_argument for theta outside [-90, 90].
arma::cx_vec steering(int m_antennas, double theta_deg);

// Line-of-sight complex gain: |alpha| = lambda_c / (4*pi*d), phase as given.
std::complex<double> path_gain(double distance_m, double carrier_freq_hz,
                               double phase_rad);

struct ChannelRealization {
    arma::cx_rowvec h;                // terminal <- serving panel, row vector
    std::complex<double> path_gain;   // alpha of the single LoS path
    double aod_at_panel_deg = 0.0;    // azimuth in the serving panel's frame
    int panel = 0;
};

// LoS channel h = alpha * rho(theta) * a(theta)^H to the serving panel.
// The other panel's block is identically zero and is not stored.
ChannelRealization ue_channel(const Scenario &sc, const UeDrop &drop, int k,
                              int panel_antennas, double freq_hz,
                              double phase_rad,
                              ElementPattern pattern = ElementPattern::isotropic);

struct LinkBudget {
    std::complex<double> beta; // effective donor-link gain
    double g_sq = 0.0;         // relay power amplification, fixed to 1/|beta|^2
    double sigma_s_sq = 0.0;   // transmit symbol power, watts
    double sigma_n_sq = 0.0;   // relay-side noise power, watts
    double sigma_z_sq = 0.0;   // terminal-side noise power, watts
    int p0_antennas = 0;       // relay antennas on the donor-facing panel
};

// Donor link through matched boresight beams on both ends:
// |beta| = |alpha_br| * m_b * m_r, and g_sq = 1/|beta|^2.
LinkBudget bs_asr_beta(int m_b, int m_r, double d_br, double freq_hz,
                       double sigma_s_sq_w, double sigma_n_sq_w,
                       double sigma_z_sq_w);

} // namespace repsim
