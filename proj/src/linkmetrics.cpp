// SPDX-License-Identifier: Apache-2.0
#include "repsim/linkmetrics.hpp"

#include <cmath>
#include <stdexcept>

namespace repsim {

double snr_of(const ChannelRealization &ch, const BeamEntry &beam,
              const LinkBudget &budget) {
    if (ch.h.n_elem != beam.weights.n_elem)
        throw std::invalid_argument("snr_of: channel and beam dimensions differ");
    if (ch.panel != beam.panel) return 0.0;

    // X = |h f|^2, then the amplify-and-forward budget. The repeater reamplifies
    // its own input noise, hence the g^2 sigma_n^2 M X term next to sigma_z^2.
    const double x = std::norm(arma::as_scalar(ch.h * beam.weights));
    const double beta_sq = std::norm(budget.beta);
    const double num = budget.g_sq * beta_sq * budget.sigma_s_sq * x;
    const double den =
        budget.g_sq * budget.sigma_n_sq * static_cast<double>(budget.p0_antennas) * x +
        budget.sigma_z_sq;
    return num / den;
}

FeasibilityTable build_feasibility(const UeDrop &drop,
                                   const std::vector<ChannelRealization> &channels,
                                   const std::vector<const Codebook *> &books,
                                   const LinkBudget &budget, double eta_bar,
                                   Exec mode) {
    if (static_cast<int>(channels.size()) != drop.count())
        throw std::invalid_argument("build_feasibility: drop/channel size mismatch");
    if (books.empty()) throw std::invalid_argument("build_feasibility: no codebooks");
    for (const Codebook *cb : books)
        if (cb == nullptr)
            throw std::invalid_argument("build_feasibility: null codebook");
    if (eta_bar < 0.0)
        throw std::invalid_argument("build_feasibility: eta_bar must be >= 0");

    FeasibilityTable t;
    t.n_ues = drop.count();
    t.eta_bar = eta_bar;
    for (std::size_t p = 0; p < books.size(); ++p)
        for (std::size_t j = 0; j < books[p]->beams.size(); ++j)
            t.panel_of_beam.push_back(static_cast<int>(p));
    t.n_beams = static_cast<int>(t.panel_of_beam.size());
    t.panel_of_ue = drop.panel_of;

    t.snr.zeros(t.n_ues, t.n_beams);
    t.rate.zeros(t.n_ues, t.n_beams);
    t.feasible.assign(t.n_ues, std::vector<std::uint8_t>(t.n_beams, 0));

    // Stamp each column's beam with its panel once so the hot loop can hand
    // entries straight to snr_of.
    std::vector<BeamEntry> cols;
    cols.reserve(t.n_beams);
    for (std::size_t p = 0; p < books.size(); ++p)
        for (const BeamEntry &beam : books[p]->beams) {
            cols.push_back(beam);
            cols.back().panel = static_cast<int>(p);
        }

    for_each_index(mode, t.n_ues, [&](std::size_t k) {
        const ChannelRealization &ch = channels[k];
        for (int col = 0; col < t.n_beams; ++col) {
            const double gamma = snr_of(ch, cols[col], budget);
            t.snr(k, col) = gamma;
            t.rate(k, col) = std::log2(1.0 + gamma);
            t.feasible[k][col] =
                (ch.panel == cols[col].panel && t.rate(k, col) >= eta_bar) ? 1 : 0;
        }
    });
    return t;
}

FeasibilityTable with_threshold(const FeasibilityTable &base, double eta_bar) {
    if (eta_bar < 0.0)
        throw std::invalid_argument("with_threshold: eta_bar must be >= 0");
    FeasibilityTable t = base;
    t.eta_bar = eta_bar;
    for (int k = 0; k < t.n_ues; ++k)
        for (int b = 0; b < t.n_beams; ++b)
            t.feasible[k][b] =
                (t.panel_of_ue[k] == t.panel_of_beam[b] && t.rate(k, b) >= eta_bar)
                    ? 1
                    : 0;
    return t;
}

} // namespace repsim
