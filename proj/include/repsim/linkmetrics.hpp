// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <cstdint>
#include <vector>

#include "repsim/channel.hpp"
#include "repsim/codebook.hpp"
#include "repsim/exec.hpp"
#include "repsim/geometry.hpp"

namespace repsim {

// End-to-end SNR of one terminal on one analog beam through the repeater
// chain. The noise picked up at the repeater input rides through the variable
// gain stage, so the denominator carries the donor-side antenna count from the
// budget. Cross-panel pairs get 0 by convention.
double snr_of(const ChannelRealization &ch, const BeamEntry &beam,
              const LinkBudget &budget);

// Dense per-terminal per-beam link table. Beams are stacked panel 0 first,
// then panel 1, preserving each codebook's internal order.
struct FeasibilityTable {
    arma::mat snr;  // K x B_total, linear
    arma::mat rate; // K x B_total, log2(1 + snr)
    std::vector<std::vector<std::uint8_t>> feasible; // rate >= eta && panel ok
    std::vector<int> panel_of_beam;
    std::vector<int> panel_of_ue;
    double eta_bar = 0.0;
    int n_ues = 0;
    int n_beams = 0;
};

// `books` holds one codebook per panel, aliasing allowed; panels beyond
// books.size() are unserved. SNR rows are filled in parallel across terminals
// when mode is Exec::parallel; each row is written by exactly one task, so
// results are identical to the serial path.
FeasibilityTable build_feasibility(const UeDrop &drop,
                                   const std::vector<ChannelRealization> &channels,
                                   const std::vector<const Codebook *> &books,
                                   const LinkBudget &budget, double eta_bar,
                                   Exec mode = Exec::serial);

// Same table re-thresholded at a new QoS floor; SNRs are not recomputed.
FeasibilityTable with_threshold(const FeasibilityTable &base, double eta_bar);

} // namespace repsim
