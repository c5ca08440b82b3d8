// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstdint>
#include <vector>

#include "repsim/exec.hpp"

namespace repsim {

// Uniform D-point angle grid over [-60, 60] deg (cell centers), partitioned
// into `levels` contiguous equal subsets.
struct AngleGrid {
    arma::vec angles_deg;  // theta_d = -60 + (d + 0.5) * 120/D
    int levels = 0;
    int subset_size = 0;   // D / levels

    int points() const { return static_cast<int>(angles_deg.n_elem); }
    // Subset index of grid cell d.
    int subset_of(int d) const { return d / subset_size; }
};

AngleGrid build_grid(int d_points, int levels);

struct BeamEntry {
    arma::cx_vec weights;              // unit modulus per element
    std::vector<std::uint8_t> support_mask; // grid-cell indicator (empty for DFT beams)
    std::uint32_t subset_bits = 0;     // which subsets the beam covers
    int level = 0;                     // number of covered subsets
    int beam_id = 0;
    int panel = 0;
};

struct Codebook {
    std::vector<BeamEntry> beams;
    int levels = 0;
    int total = 0;
    int m_antennas = 0;
    int d_points = 0;
};

// Constant-modulus beam covering the union of the selected subsets.
// Deterministic multi-seed synthesis: least-squares seed, fixed quadratic
// chirps, a per-run matched frequency sweep, and (for split supports) steered
// superpositions; each seed refined by alternating projections and by a
// ripple-clipping variant; the candidate with the largest worst-case in-band
// gain wins.
BeamEntry synthesize_beam(const AngleGrid &grid, std::uint32_t subset_bits,
                          int m_r);

// All 2^L - 1 subset unions, ordered by level then by subset combination.
Codebook build_codebook(const AngleGrid &grid, int m_r,
                        Exec exec = Exec::serial);

// DFT beams over m antennas, keeping those whose peak direction lies in the
// [-60, 60] deg sector; all tagged level 1.
Codebook build_dft_codebook(int m);

// Power pattern |a(theta)^H f|^2.
double beam_gain(const BeamEntry &beam, double theta_deg);

} // namespace repsim
