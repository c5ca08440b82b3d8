// SPDX-License-Identifier: Apache-2.0

#include "repsim/codebook.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "repsim/units.hpp"

namespace repsim {

namespace {

// Shared per-grid synthesis state: dictionary with rows a(theta_d)^H and its
// pseudoinverse. Fitting against a^H rows makes the fitted quantity the
// physical response |a^H f|^2, so beams land on their own subsets rather than
// the mirrored ones.
struct SynthCtx {
    const AngleGrid *grid;
    int M;
    arma::cx_mat A;     // D x M
    arma::cx_mat Apinv; // M x D

    SynthCtx(const AngleGrid &g, int m_r) : grid(&g), M(m_r) {
        const int D = g.points();
        A.set_size(D, M);
        for (int d = 0; d < D; ++d) {
            const double s = std::sin(deg2rad(g.angles_deg[d]));
            for (int m = 0; m < M; ++m)
                A(d, m) = std::polar(1.0, -pi * m * s);
        }
        Apinv = arma::pinv(A);
    }
};

arma::cx_vec unit_modulus(const arma::cx_vec &f) {
    arma::cx_vec out(f.n_elem);
    for (arma::uword i = 0; i < f.n_elem; ++i) {
        const double mag = std::abs(f[i]);
        out[i] = mag > 1e-300 ? f[i] / mag : std::complex<double>(1.0, 0.0);
    }
    return out;
}

std::vector<std::uint8_t> mask_of(const AngleGrid &g, std::uint32_t bits) {
    std::vector<std::uint8_t> mask(g.points(), 0);
    for (int d = 0; d < g.points(); ++d)
        if (bits >> g.subset_of(d) & 1u)
            mask[d] = 1;
    return mask;
}

// Alternating projections onto the realizable set (unit-modulus weights) and
// the target magnitude set (support indicator with free phase).
arma::cx_vec project_iter(const SynthCtx &ctx,
                          const std::vector<std::uint8_t> &mask,
                          arma::cx_vec f, int iters) {
    const int D = ctx.grid->points();
    arma::cx_vec tgt(D);
    for (int it = 0; it < iters; ++it) {
        const arma::cx_vec y = ctx.A * f;
        for (int d = 0; d < D; ++d)
            tgt[d] = mask[d] ? std::polar(1.0, std::arg(y[d]))
                             : std::complex<double>(0.0, 0.0);
        f = unit_modulus(ctx.Apinv * tgt);
    }
    return f;
}

// Variant with a moving clipped-magnitude target: pulls the in-band response
// toward a flat level instead of the raw indicator. Escapes the peaky local
// optima the plain iteration falls into on narrow or split supports.
arma::cx_vec clip_iter(const SynthCtx &ctx,
                       const std::vector<std::uint8_t> &mask, arma::cx_vec f,
                       int iters) {
    const int D = ctx.grid->points();
    int n_in = 0;
    for (int d = 0; d < D; ++d)
        n_in += mask[d];
    arma::cx_vec tgt(D);
    for (int it = 0; it < iters; ++it) {
        const arma::cx_vec y = ctx.A * f;
        double t = 0.0;
        for (int d = 0; d < D; ++d)
            if (mask[d])
                t += std::abs(y[d]);
        t /= n_in;
        for (int d = 0; d < D; ++d) {
            if (!mask[d]) {
                tgt[d] = 0.0;
                continue;
            }
            const double mag = std::clamp(std::abs(y[d]), 0.9 * t, 1.1 * t);
            tgt[d] = std::polar(mag, std::arg(y[d]));
        }
        f = unit_modulus(ctx.Apinv * tgt);
    }
    return f;
}

double min_inband_gain(const SynthCtx &ctx,
                       const std::vector<std::uint8_t> &mask,
                       const arma::cx_vec &f) {
    const arma::cx_vec y = ctx.A * f;
    double q = std::numeric_limits<double>::infinity();
    for (int d = 0; d < ctx.grid->points(); ++d)
        if (mask[d])
            q = std::min(q, std::norm(y[d]));
    return q;
}

// Maximal contiguous runs of selected subsets, as [lo, hi] index pairs.
std::vector<std::pair<int, int>> runs_of(std::uint32_t bits, int levels) {
    std::vector<std::pair<int, int>> runs;
    int v = 0;
    while (v < levels) {
        if (!(bits >> v & 1u)) {
            ++v;
            continue;
        }
        int lo = v;
        while (v + 1 < levels && (bits >> (v + 1) & 1u))
            ++v;
        runs.emplace_back(lo, v);
        ++v;
    }
    return runs;
}

arma::cx_vec synth_weights(const SynthCtx &ctx, std::uint32_t bits) {
    const AngleGrid &g = *ctx.grid;
    const int M = ctx.M;
    const int D = g.points();
    const double width = 120.0 / g.levels;

    const std::vector<std::uint8_t> mask = mask_of(g, bits);
    arma::vec b(D);
    for (int d = 0; d < D; ++d)
        b[d] = mask[d] ? 1.0 : 0.0;

    const auto steer_at = [&](double deg) {
        const double s = std::sin(deg2rad(deg));
        arma::cx_vec a(M);
        for (int m = 0; m < M; ++m)
            a[m] = std::polar(1.0, pi * m * s);
        return a;
    };

    std::vector<arma::cx_vec> seeds;
    seeds.push_back(unit_modulus(ctx.Apinv * arma::cx_vec(b, arma::vec(D, arma::fill::zeros))));
    for (const double c : {0.5, 1.0, 1.5, 2.0}) {
        arma::cx_vec chirp(M);
        for (int m = 0; m < M; ++m)
            chirp[m] = std::polar(1.0, pi * c * m * m / M);
        seeds.push_back(std::move(chirp));
    }

    const auto runs = runs_of(bits, g.levels);
    {
        // Matched linear sweep of each run's sin range; flat wide-beam seed.
        arma::cx_vec fm(M, arma::fill::zeros);
        for (const auto &[lo, hi] : runs) {
            const double s1 = std::sin(deg2rad(-60.0 + lo * width));
            const double s2 = std::sin(deg2rad(-60.0 + (hi + 1) * width));
            for (int m = 0; m < M; ++m) {
                const double quad = M > 1 ? (s2 - s1) * m * m / (2.0 * (M - 1)) : 0.0;
                fm[m] += std::polar(1.0, pi * (s1 * m + quad));
            }
        }
        seeds.push_back(unit_modulus(fm));
    }
    if (runs.size() > 1) {
        arma::cx_vec sum(M, arma::fill::zeros);
        arma::cx_vec sum_chirped(M, arma::fill::zeros);
        int k = 0;
        for (const auto &[lo, hi] : runs) {
            const double center = -60.0 + (lo + hi + 1) * 0.5 * width;
            const arma::cx_vec a = steer_at(center);
            sum += a;
            for (int m = 0; m < M; ++m)
                sum_chirped[m] += a[m] * std::polar(1.0, pi * 0.5 * k * m * m / M);
            ++k;
        }
        seeds.push_back(unit_modulus(sum));
        seeds.push_back(unit_modulus(sum_chirped));
    }

    constexpr int iters = 50;
    arma::cx_vec best;
    double best_q = -std::numeric_limits<double>::infinity();
    const auto consider = [&](const arma::cx_vec &f) {
        const double q = min_inband_gain(ctx, mask, f);
        if (q > best_q + 1e-12) {
            best = f;
            best_q = q;
        }
    };
    for (const auto &seed : seeds) {
        consider(seed);
        consider(project_iter(ctx, mask, seed, iters));
        consider(clip_iter(ctx, mask, seed, iters));
    }
    return best;
}

BeamEntry make_entry(const SynthCtx &ctx, std::uint32_t bits, int beam_id) {
    BeamEntry be;
    be.weights = synth_weights(ctx, bits);
    be.support_mask = mask_of(*ctx.grid, bits);
    be.subset_bits = bits;
    be.level = std::popcount(bits);
    be.beam_id = beam_id;
    return be;
}

} // namespace

AngleGrid build_grid(int d_points, int levels) {
    if (d_points < 1 || levels < 1 || levels > 20)
        throw std::invalid_argument("build_grid: need 1 <= levels <= 20 and d_points >= 1");
    if (d_points % levels != 0)
        throw std::invalid_argument("build_grid: d_points must be divisible by levels");
    AngleGrid g;
    g.levels = levels;
    g.subset_size = d_points / levels;
    g.angles_deg.set_size(d_points);
    const double step = 120.0 / d_points;
    for (int d = 0; d < d_points; ++d)
        g.angles_deg[d] = -60.0 + (d + 0.5) * step;
    return g;
}

BeamEntry synthesize_beam(const AngleGrid &grid, std::uint32_t subset_bits,
                          int m_r) {
    if (m_r < 1)
        throw std::invalid_argument("synthesize_beam: m_r must be >= 1");
    if (subset_bits == 0 || subset_bits >= (1u << grid.levels))
        throw std::invalid_argument("synthesize_beam: empty or out-of-range subset selection");
    SynthCtx ctx(grid, m_r);
    return make_entry(ctx, subset_bits, 0);
}

Codebook build_codebook(const AngleGrid &grid, int m_r, Exec exec) {
    if (m_r < 1)
        throw std::invalid_argument("build_codebook: m_r must be >= 1");
    const int L = grid.levels;

    // Beam ids ordered by level, then by subset combination (lexicographic),
    // so the narrowest (highest-gain) beams take the lowest ids.
    std::vector<std::uint32_t> selections;
    selections.reserve((1u << L) - 1);
    for (int lev = 1; lev <= L; ++lev) {
        std::vector<int> comb(lev);
        for (int i = 0; i < lev; ++i)
            comb[i] = i;
        while (true) {
            std::uint32_t bits = 0;
            for (const int v : comb)
                bits |= 1u << v;
            selections.push_back(bits);
            int i = lev - 1;
            while (i >= 0 && comb[i] == L - lev + i)
                --i;
            if (i < 0)
                break;
            ++comb[i];
            for (int j = i + 1; j < lev; ++j)
                comb[j] = comb[j - 1] + 1;
        }
    }

    SynthCtx ctx(grid, m_r);
    Codebook cb;
    cb.levels = L;
    cb.total = static_cast<int>(selections.size());
    cb.m_antennas = m_r;
    cb.d_points = grid.points();
    cb.beams.resize(selections.size());
    for_each_index(exec, static_cast<std::int64_t>(selections.size()),
                   [&](std::int64_t i) {
                       cb.beams[i] = make_entry(ctx, selections[i],
                                                static_cast<int>(i));
                   });
    return cb;
}

Codebook build_dft_codebook(int m) {
    if (m < 1)
        throw std::invalid_argument("build_dft_codebook: m must be >= 1");
    const double s_max = std::sin(deg2rad(60.0)) + 1e-12;
    Codebook cb;
    cb.levels = 1;
    cb.m_antennas = m;
    cb.d_points = 0;
    for (int u = 0; u < m; ++u) {
        double s = 2.0 * u / m;
        if (s >= 1.0)
            s -= 2.0; // wrap to [-1, 1)
        if (std::abs(s) > s_max)
            continue; // peak outside the serviced sector
        BeamEntry be;
        be.weights.set_size(m);
        for (int i = 0; i < m; ++i)
            be.weights[i] = std::polar(1.0, 2.0 * pi * i * u / m);
        be.level = 1;
        be.beam_id = static_cast<int>(cb.beams.size());
        cb.beams.push_back(std::move(be));
    }
    cb.total = static_cast<int>(cb.beams.size());
    return cb;
}

double beam_gain(const BeamEntry &beam, double theta_deg) {
    if (theta_deg < -90.0 || theta_deg > 90.0)
        throw std::invalid_argument("beam_gain: theta outside [-90, 90] deg");
    const double s = std::sin(deg2rad(theta_deg));
    std::complex<double> acc(0.0, 0.0);
    for (arma::uword m = 0; m < beam.weights.n_elem; ++m)
        acc += beam.weights[m] * std::polar(1.0, -pi * static_cast<double>(m) * s);
    return std::norm(acc);
}

} // namespace repsim
