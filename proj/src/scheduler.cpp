// SPDX-License-Identifier: Apache-2.0
#include "repsim/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cinttypes>
#include <cstdio>
#include <optional>
#include <stdexcept>

namespace repsim {

void ProblemInstance::validate() const {
    if (n_ues < 0 || n_beams < 0)
        throw std::invalid_argument("instance: negative dimensions");
    if (static_cast<int>(feasible.size()) != n_ues)
        throw std::invalid_argument("instance: feasible row count");
    for (const auto &row : feasible)
        if (static_cast<int>(row.size()) != n_beams)
            throw std::invalid_argument("instance: feasible column count");
    if (static_cast<int>(panel_of_beam.size()) != n_beams)
        throw std::invalid_argument("instance: panel_of_beam size");
    for (int p : panel_of_beam)
        if (p != 0 && p != 1)
            throw std::invalid_argument("instance: panel ids must be 0 or 1");
    if (n_subchannels < 1)
        throw std::invalid_argument("instance: n_subchannels must be >= 1");
    if (q_slots < 0) throw std::invalid_argument("instance: q_slots must be >= 0");
    if (!std::isfinite(lambda))
        throw std::invalid_argument("instance: lambda must be finite");
    if (rate.n_elem != 0 &&
        (static_cast<int>(rate.n_rows) != n_ues ||
         static_cast<int>(rate.n_cols) != n_beams))
        throw std::invalid_argument("instance: rate matrix shape");
}

ProblemInstance make_instance(const FeasibilityTable &table, int n_subchannels,
                              int q_slots, double lambda, CapacityMode mode) {
    ProblemInstance inst;
    inst.n_ues = table.n_ues;
    inst.n_beams = table.n_beams;
    inst.feasible = table.feasible;
    inst.panel_of_beam = table.panel_of_beam;
    inst.rate = table.rate;
    inst.n_subchannels = n_subchannels;
    inst.q_slots = q_slots;
    inst.lambda = lambda;
    inst.capacity_mode = mode;
    inst.validate();
    return inst;
}

namespace {

// Terminal-set bit mask sized once per instance.
struct Mask {
    std::vector<std::uint64_t> w;
    explicit Mask(int nbits = 0)
        : w((static_cast<std::size_t>(nbits) + 63) / 64, 0) {}
    void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1ULL; }
    void or_in(const Mask &o) {
        for (std::size_t t = 0; t < w.size(); ++t) w[t] |= o.w[t];
    }
    int count() const {
        int c = 0;
        for (std::uint64_t x : w) c += std::popcount(x);
        return c;
    }
    int count_minus(const Mask &o) const { // |this \ o|
        int c = 0;
        for (std::size_t t = 0; t < w.size(); ++t)
            c += std::popcount(w[t] & ~o.w[t]);
        return c;
    }
    bool equals(const Mask &o) const { return w == o.w; }
};

struct Prep {
    const ProblemInstance *inst = nullptr;
    std::vector<Mask> fset;                 // per beam: feasible terminals
    std::vector<std::vector<int>> flist;    // per beam, ascending terminal ids
    std::vector<std::vector<int>> ue_beams; // per terminal, ascending beam ids
};

Prep prepare(const ProblemInstance &inst) {
    Prep p;
    p.inst = &inst;
    p.fset.assign(inst.n_beams, Mask(inst.n_ues));
    p.flist.resize(inst.n_beams);
    p.ue_beams.resize(inst.n_ues);
    for (int b = 0; b < inst.n_beams; ++b)
        for (int k = 0; k < inst.n_ues; ++k)
            if (inst.feasible[k][b]) {
                p.fset[b].set(k);
                p.flist[b].push_back(k);
                p.ue_beams[k].push_back(b);
            }
    return p;
}

// Capacitated assignment scratch state over an activation set S. Terminals
// hold at most one beam; beams hold at most `cap` terminals.
struct Flow {
    const Prep *p;
    const std::vector<int> *S;
    const std::vector<int> *pos; // beam id -> index in S, or -1
    int cap = 1;
    std::vector<int> ue_at;                // terminal -> S index or -1
    std::vector<int> load;                 // per S index
    std::vector<std::vector<int>> members; // per S index

    Flow(const Prep &pr, const std::vector<int> &s, const std::vector<int> &po,
         int c)
        : p(&pr), S(&s), pos(&po), cap(c), ue_at(pr.inst->n_ues, -1),
          load(s.size(), 0), members(s.size()) {}

    void place(int u, int si) {
        ue_at[u] = si;
        ++load[si];
        members[si].push_back(u);
    }
    void remove(int u) {
        int si = ue_at[u];
        ue_at[u] = -1;
        --load[si];
        auto &m = members[si];
        m.erase(std::find(m.begin(), m.end(), u));
    }
    int total() const {
        int c = 0;
        for (int v : ue_at)
            if (v >= 0) ++c;
        return c;
    }

    // Beam-side augmentation: give beam si one terminal from `allowed`,
    // re-deriving earlier picks if needed. Only valid while every load is <=1
    // (the saturation phase).
    bool saturate_one(int si, const std::vector<char> &allowed,
                      std::vector<char> &uvis) {
        for (int u : p->flist[(*S)[si]]) {
            if (!allowed[u] || uvis[u]) continue;
            uvis[u] = 1;
            if (ue_at[u] == -1) {
                place(u, si);
                return true;
            }
            int holder = ue_at[u];
            remove(u);
            if (saturate_one(holder, allowed, uvis)) {
                place(u, si);
                return true;
            }
            place(u, holder);
        }
        return false;
    }

    // Terminal-side augmentation that only relocates existing assignments.
    bool assign_move(int u, std::vector<char> &bvis) {
        for (int b : p->ue_beams[u]) {
            int si = (*pos)[b];
            if (si < 0 || bvis[si]) continue;
            bvis[si] = 1;
            if (load[si] < cap) {
                place(u, si);
                return true;
            }
            std::vector<int> snapshot = members[si];
            for (int v : snapshot) {
                remove(v);
                if (assign_move(v, bvis)) {
                    place(u, si);
                    return true;
                }
                place(v, si);
            }
        }
        return false;
    }

    // Like assign_move but may evict a non-forced terminal outright, leaving
    // it unassigned. Used when forcing must-serve terminals in.
    bool assign_force(int u, const std::vector<char> &forced,
                      std::vector<char> &bvis) {
        for (int b : p->ue_beams[u]) {
            int si = (*pos)[b];
            if (si < 0 || bvis[si]) continue;
            bvis[si] = 1;
            if (load[si] < cap) {
                place(u, si);
                return true;
            }
            int evict = -1;
            for (int v : members[si])
                if (!forced[v] && (evict == -1 || v < evict)) evict = v;
            if (evict != -1) {
                remove(evict);
                place(u, si);
                return true;
            }
            std::vector<int> snapshot = members[si];
            for (int v : snapshot) {
                remove(v);
                if (assign_force(v, forced, bvis)) {
                    place(u, si);
                    return true;
                }
                place(v, si);
            }
        }
        return false;
    }
};

std::vector<int> make_pos(const ProblemInstance &inst,
                          const std::vector<int> &S) {
    std::vector<int> pos(inst.n_beams, -1);
    for (int si = 0; si < static_cast<int>(S.size()); ++si) pos[S[si]] = si;
    return pos;
}

// Per-beam-budget test: with must-serve set `forced_list` and optional pool
// `optional_list`, can S be saturated, every forced terminal assigned, and the
// served total brought to exactly `target`?
bool per_beam_reachable(const Prep &p, const std::vector<int> &S,
                        const std::vector<int> &pos,
                        const std::vector<int> &forced_list,
                        const std::vector<int> &optional_list, int target,
                        int cap) {
    const int K = p.inst->n_ues;
    std::vector<char> allowed(K, 0), forced(K, 0);
    for (int u : forced_list) allowed[u] = forced[u] = 1;
    for (int u : optional_list) allowed[u] = 1;

    Flow f(p, S, pos, cap);
    for (int si = 0; si < static_cast<int>(S.size()); ++si) {
        std::vector<char> uvis(K, 0);
        if (!f.saturate_one(si, allowed, uvis)) return false;
    }
    for (int u : forced_list) {
        if (f.ue_at[u] != -1) continue;
        std::vector<char> bvis(S.size(), 0);
        if (!f.assign_force(u, forced, bvis)) return false;
    }
    int tot = f.total();
    if (tot > target) return false;
    for (int u : optional_list) {
        if (tot == target) break;
        if (f.ue_at[u] != -1) continue;
        std::vector<char> bvis(S.size(), 0);
        if (f.assign_move(u, bvis)) ++tot;
    }
    return tot == target;
}

// Evaluates one activation set exactly: panel budgets, the serve-at-least-one
// coupling, the subchannel budget, then the canonical served set (most
// terminals, lowest indices) and a deterministic assignment. nullopt when the
// set admits no valid assignment.
std::optional<ScheduleSolution> evaluate_activation(const Prep &p,
                                                    const std::vector<int> &S) {
    const ProblemInstance &inst = *p.inst;
    const int K = inst.n_ues;
    const int nS = static_cast<int>(S.size());
    const bool global = inst.capacity_mode == CapacityMode::global_n;
    const int N = inst.n_subchannels;

    int used[2] = {0, 0};
    for (int b : S) ++used[inst.panel_of_beam[b]];
    if (used[0] > inst.q_slots || used[1] > inst.q_slots) return std::nullopt;
    if (global && nS > N) return std::nullopt; // each active beam serves >= 1

    Mask cov(K);
    for (int b : S) cov.or_in(p.fset[b]);
    std::vector<int> cov_list;
    for (int k = 0; k < K; ++k)
        if (cov.test(k)) cov_list.push_back(k);

    const std::vector<int> pos = make_pos(inst, S);

    // Saturation over the whole covered pool: one distinct terminal per beam.
    {
        std::vector<char> allowed(K, 0);
        for (int k : cov_list) allowed[k] = 1;
        Flow sat(p, S, pos, 1);
        for (int si = 0; si < nS; ++si) {
            std::vector<char> uvis(K, 0);
            if (!sat.saturate_one(si, allowed, uvis)) return std::nullopt;
        }
    }

    // Largest achievable served count for this activation set.
    int s_target = 0;
    if (global) {
        s_target = std::min(N, static_cast<int>(cov_list.size()));
    } else {
        std::vector<char> allowed(K, 0);
        for (int k : cov_list) allowed[k] = 1;
        Flow f(p, S, pos, N);
        for (int si = 0; si < nS; ++si) {
            std::vector<char> uvis(K, 0);
            f.saturate_one(si, allowed, uvis); // cannot fail: checked above
        }
        for (int k : cov_list) {
            if (f.ue_at[k] != -1) continue;
            std::vector<char> bvis(nS, 0);
            f.assign_move(k, bvis);
        }
        s_target = f.total();
    }

    // Canonical served set: grow by ascending terminal index whenever the
    // remaining pool can still complete to s_target served with S saturated.
    std::vector<int> C;
    std::vector<char> in_c(K, 0);
    if (global) {
        if (static_cast<int>(cov_list.size()) <= s_target) {
            C = cov_list;
            for (int k : C) in_c[k] = 1;
        } else {
            // Track a maximum matching of beams into the chosen prefix; the
            // completion needs |S| - m_in distinct terminals from outside it.
            std::vector<int> owner(K, -1), beam_ue(nS, -1);
            int m_in = 0;
            std::vector<char> allowed(K, 0);
            auto augment = [&](auto &&self, int si,
                               std::vector<char> &uvis) -> bool {
                for (int u : p.flist[S[si]]) {
                    if (!allowed[u] || uvis[u]) continue;
                    uvis[u] = 1;
                    if (owner[u] == -1 || self(self, owner[u], uvis)) {
                        if (beam_ue[si] != -1) owner[beam_ue[si]] = -1;
                        owner[u] = si;
                        beam_ue[si] = u;
                        return true;
                    }
                }
                return false;
            };
            const int total_cov = static_cast<int>(cov_list.size());
            for (int t = 0; t < total_cov; ++t) {
                if (static_cast<int>(C.size()) == s_target) break;
                const int k = cov_list[t];
                const int undecided_after = total_cov - t - 1;
                std::vector<int> owner_bak = owner, beam_bak = beam_ue;
                const int m_bak = m_in;
                allowed[k] = 1;
                if (m_in < nS) {
                    for (int si = 0; si < nS && m_in == m_bak; ++si) {
                        if (beam_ue[si] != -1) continue;
                        std::vector<char> uvis(K, 0);
                        if (augment(augment, si, uvis)) ++m_in;
                    }
                }
                const int need_outside = nS - m_in;
                const int in_sz = static_cast<int>(C.size()) + 1;
                if (in_sz + need_outside <= s_target &&
                    in_sz + undecided_after >= s_target) {
                    C.push_back(k);
                    in_c[k] = 1;
                } else {
                    allowed[k] = 0;
                    owner = std::move(owner_bak);
                    beam_ue = std::move(beam_bak);
                    m_in = m_bak;
                }
            }
        }
    } else {
        const int total_cov = static_cast<int>(cov_list.size());
        for (int t = 0; t < total_cov; ++t) {
            if (static_cast<int>(C.size()) == s_target) break;
            const int k = cov_list[t];
            std::vector<int> forced = C;
            forced.push_back(k);
            std::vector<int> optional;
            for (int t2 = t + 1; t2 < total_cov; ++t2)
                optional.push_back(cov_list[t2]);
            if (per_beam_reachable(p, S, pos, forced, optional, s_target, N)) {
                C.push_back(k);
                in_c[k] = 1;
            }
        }
    }
    if (static_cast<int>(C.size()) != s_target)
        throw std::logic_error("evaluate_activation: served-set selection bug");

    // Deterministic assignment of C: saturate within C, then place the rest.
    ScheduleSolution sol;
    sol.assignment.assign(K, -1);
    {
        Flow f(p, S, pos, global ? INT_MAX : N);
        for (int si = 0; si < nS; ++si) {
            std::vector<char> uvis(K, 0);
            if (!f.saturate_one(si, in_c, uvis))
                throw std::logic_error("evaluate_activation: saturation bug");
        }
        for (int k : C) {
            if (f.ue_at[k] != -1) continue;
            std::vector<char> bvis(nS, 0);
            if (!f.assign_move(k, bvis))
                throw std::logic_error("evaluate_activation: placement bug");
        }
        for (int k = 0; k < K; ++k)
            if (f.ue_at[k] != -1) sol.assignment[k] = S[f.ue_at[k]];
    }
    sol.active_beams = S;
    sol.served_count = static_cast<int>(C.size());
    sol.objective = static_cast<double>(sol.served_count) -
                    inst.lambda * static_cast<double>(nS);
    sol.per_panel_slots[0] = used[0];
    sol.per_panel_slots[1] = used[1];
    return sol;
}

std::vector<int> served_list(const ScheduleSolution &s) {
    std::vector<int> out;
    for (int k = 0; k < static_cast<int>(s.assignment.size()); ++k)
        if (s.assignment[k] != -1) out.push_back(k);
    return out;
}

// Strict "a beats b" under the full tie chain: objective, served count, fewer
// active beams, lexicographically smaller active set, lowest served indices.
bool better(const ScheduleSolution &a, const ScheduleSolution &b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    if (a.served_count != b.served_count) return a.served_count > b.served_count;
    if (a.active_beams.size() != b.active_beams.size())
        return a.active_beams.size() < b.active_beams.size();
    if (a.active_beams != b.active_beams) return a.active_beams < b.active_beams;
    return served_list(a) < served_list(b);
}

// Largest number of candidate beams that can be active at once: every active
// beam needs its own terminal, beams per panel are capped at Q. Max flow on
// source -> panel (cap Q) -> beam (cap 1) -> terminal (cap 1) -> sink with
// breadth-first augmentation; the answer is at most K.
int max_saturating(const Prep &p, const ProblemInstance &inst,
                   const std::vector<int> &cand,
                   const std::vector<int> &cpanel) {
    const int nc = static_cast<int>(cand.size());
    const int K = inst.n_ues;
    const int src = 0;        // then panels 1..2, beams 3.., terminals t0..
    const int t0 = 3 + nc;
    const int tsink = t0 + K;
    struct Edge {
        int to, cap, rev;
    };
    std::vector<std::vector<Edge>> g(tsink + 1);
    auto add = [&](int a, int b, int c) {
        g[a].push_back({b, c, static_cast<int>(g[b].size())});
        g[b].push_back({a, 0, static_cast<int>(g[a].size()) - 1});
    };
    add(src, 1, inst.q_slots);
    add(src, 2, inst.q_slots);
    for (int i = 0; i < nc; ++i) {
        add(1 + cpanel[i], 3 + i, 1);
        for (int k : p.flist[cand[i]]) add(3 + i, t0 + k, 1);
    }
    for (int k = 0; k < K; ++k) add(t0 + k, tsink, 1);

    int flow = 0;
    std::vector<int> pre_node(tsink + 1), pre_edge(tsink + 1), queue_buf;
    for (;;) {
        std::fill(pre_node.begin(), pre_node.end(), -1);
        pre_node[src] = src;
        queue_buf.assign(1, src);
        for (std::size_t qi = 0; qi < queue_buf.size(); ++qi) {
            int v = queue_buf[qi];
            for (int e = 0; e < static_cast<int>(g[v].size()); ++e) {
                const Edge &ed = g[v][e];
                if (ed.cap > 0 && pre_node[ed.to] < 0) {
                    pre_node[ed.to] = v;
                    pre_edge[ed.to] = e;
                    queue_buf.push_back(ed.to);
                }
            }
        }
        if (pre_node[tsink] < 0) break;
        for (int v = tsink; v != src; v = pre_node[v]) {
            Edge &ed = g[pre_node[v]][pre_edge[v]];
            --ed.cap;
            ++g[v][ed.rev].cap;
        }
        ++flow;
    }
    return flow;
}

struct Bnb {
    const Prep *p = nullptr;
    const ProblemInstance *inst = nullptr;
    std::vector<int> cand;    // beam ids, ascending, after filtering
    std::vector<int> cpanel;  // per candidate
    std::vector<int> pred;    // previous same-(panel, fset) candidate, or -1
    std::vector<char> in_cand; // candidate currently in S
    ScheduleSolution inc;
    std::vector<int> S;
    Mask cov{0};
    int used[2] = {0, 0};
    std::uint64_t nodes = 0;
    bool global = true;
    int N = 1, Q = 0, K = 0;
    int max_sat = INT_MAX;
    double lambda = 0.0;
};

void bnb_dfs(Bnb &st, int from) {
    if ((++st.nodes & ((1ULL << 22) - 1)) == 0)
        std::fprintf(stderr, "solve_exact: %" PRIu64 " nodes, incumbent %.6g\n",
                     st.nodes, st.inc.objective);

    // Upper bound over every extension of S drawn from cand[from..].
    const int n_cand = static_cast<int>(st.cand.size());
    const int nS = static_cast<int>(st.S.size());
    const int cov_now = st.cov.count();
    const int room = st.global ? st.N - nS : INT_MAX;
    int add_total = 0;
    int r_eff[2] = {0, 0};
    for (int pnl = 0; pnl < 2; ++pnl) {
        r_eff[pnl] = std::max(0, std::min(st.Q - st.used[pnl], room));
        if (r_eff[pnl] == 0) continue;
        Mask uni = st.cov;
        std::vector<int> margs;
        for (int i = from; i < n_cand; ++i) {
            if (st.cpanel[i] != pnl) continue;
            margs.push_back(st.p->fset[st.cand[i]].count_minus(st.cov));
            uni.or_in(st.p->fset[st.cand[i]]);
        }
        std::sort(margs.begin(), margs.end(), std::greater<int>());
        int top = 0;
        for (int j = 0; j < std::min<int>(r_eff[pnl], margs.size()); ++j)
            top += margs[j];
        add_total += std::min(top, uni.count_minus(st.cov));
    }
    int served_ub = cov_now + add_total;
    if (st.global)
        served_ub = std::min(served_ub, st.N);
    else
        served_ub = std::min(served_ub, st.N * (nS + r_eff[0] + r_eff[1]));
    served_ub = std::min(served_ub, st.K);

    double obj_ub;
    if (st.lambda >= 0) {
        obj_ub = static_cast<double>(served_ub) -
                 st.lambda * static_cast<double>(nS);
    } else {
        const int active_ub =
            std::min({nS + r_eff[0] + r_eff[1], served_ub, st.max_sat});
        obj_ub = static_cast<double>(served_ub) -
                 st.lambda * static_cast<double>(active_ub);
    }

    if (obj_ub < st.inc.objective) return;
    if (obj_ub == st.inc.objective && served_ub < st.inc.served_count) return;

    // When lambda is nonzero, lambda * c1 != lambda * c2 for distinct finite
    // counts, so a solution tying the incumbent on objective and served count
    // must also match its active-beam count exactly. That pins the depth of
    // any tie and lets the sorted-prefix order settle whole branches.
    const bool count_pinned =
        st.lambda != 0.0 &&
        std::isfinite(st.lambda * static_cast<double>(st.inst->n_beams));

    for (int i = from; i < n_cand; ++i) {
        const int b = st.cand[i];
        const int pnl = st.cpanel[i];
        if (st.used[pnl] >= st.Q) continue;
        if (st.pred[i] >= 0 && !st.in_cand[st.pred[i]]) continue;
        if (st.global && nS >= st.N) return;
        if (obj_ub < st.inc.objective) return; // incumbent moved mid-loop
        if (obj_ub == st.inc.objective) {
            if (served_ub < st.inc.served_count) return;
            if (served_ub == st.inc.served_count) {
                // Tie-only territory: children add ids above everything in S,
                // so their sorted active sets extend S ++ {b}. Compare that
                // prefix against the incumbent's set.
                const auto &I = st.inc.active_beams;
                const int L = static_cast<int>(I.size());
                if (nS + 1 > L) return;
                if (count_pinned || nS + 1 == L) {
                    // Every potential winner below here has exactly L active
                    // beams, so the sorted-prefix order is decisive. Without
                    // a pinned count a lex-greater prefix can still win by
                    // stopping at a smaller set, so no such cut is taken.
                    int rel = 0;
                    for (int t = 0; t < nS; ++t) {
                        if (st.S[t] != I[t]) {
                            rel = st.S[t] < I[t] ? -1 : 1;
                            break;
                        }
                    }
                    if (rel > 0) return;
                    if (rel == 0 && b > I[nS]) return;
                }
            }
        }
        st.S.push_back(b);
        st.in_cand[i] = 1;
        ++st.used[pnl];
        Mask cov_bak = st.cov;
        st.cov.or_in(st.p->fset[b]);
        auto ev = evaluate_activation(*st.p, st.S);
        if (ev) {
            if (better(*ev, st.inc)) st.inc = *ev;
            bnb_dfs(st, i + 1);
        }
        st.S.pop_back();
        st.in_cand[i] = 0;
        --st.used[pnl];
        st.cov = cov_bak;
    }
}

} // namespace

ScheduleSolution solve_bruteforce(const ProblemInstance &inst) {
    inst.validate();
    if (inst.n_beams > 16 || inst.n_ues > 12)
        throw std::invalid_argument(
            "solve_bruteforce: oracle limited to 16 beams and 12 terminals");
    Prep p = prepare(inst);
    std::optional<ScheduleSolution> best;
    std::vector<int> S;
    for (std::uint32_t mask = 0; mask < (1u << inst.n_beams); ++mask) {
        S.clear();
        for (int b = 0; b < inst.n_beams; ++b)
            if (mask & (1u << b)) S.push_back(b);
        auto cand = evaluate_activation(p, S);
        if (cand && (!best || better(*cand, *best))) best = std::move(cand);
    }
    return *best; // the empty activation always evaluates
}

ScheduleSolution solve_exact(const ProblemInstance &inst) {
    inst.validate();
    Prep p = prepare(inst);
    const bool global = inst.capacity_mode == CapacityMode::global_n;

    Bnb st;
    st.p = &p;
    st.inst = &inst;
    st.global = global;
    st.N = inst.n_subchannels;
    st.Q = inst.q_slots;
    st.K = inst.n_ues;
    st.lambda = inst.lambda;
    st.cov = Mask(inst.n_ues);

    // Candidate list: drop beams nobody can use, and under lambda >= 0 with a
    // global budget drop beams whose feasible set is contained in an earlier
    // same-panel beam's (there the canonical optimum never needs the later
    // beam: moving its terminals onto the earlier one keeps the objective and
    // shrinks or lex-lowers the active set). Beams with identical (panel,
    // feasible-set) signatures otherwise all stay: under a per-beam budget or
    // a negative lambda several copies can be active at once, each serving
    // its own terminal. Copies are interchangeable, so the canonical optimum
    // always uses the lowest ids of a class; pred[] records each candidate's
    // previous same-class member and the search only activates a copy once
    // its predecessor is active.
    for (int b = 0; b < inst.n_beams; ++b) {
        if (p.flist[b].empty()) continue;
        bool drop = false;
        if (inst.lambda >= 0 && global) {
            for (int c : st.cand) {
                if (inst.panel_of_beam[c] != inst.panel_of_beam[b]) continue;
                if (p.fset[b].count_minus(p.fset[c]) == 0) {
                    drop = true;
                    break;
                }
            }
        }
        if (!drop) st.cand.push_back(b);
    }
    const int n_cand = static_cast<int>(st.cand.size());
    st.cpanel.resize(n_cand);
    st.pred.assign(n_cand, -1);
    st.in_cand.assign(n_cand, 0);
    for (int i = 0; i < n_cand; ++i) {
        st.cpanel[i] = inst.panel_of_beam[st.cand[i]];
        for (int j = i - 1; j >= 0; --j) {
            if (st.cpanel[j] == st.cpanel[i] &&
                p.fset[st.cand[j]].equals(p.fset[st.cand[i]])) {
                st.pred[i] = j;
                break;
            }
        }
    }

    if (inst.lambda < 0)
        st.max_sat = max_saturating(p, inst, st.cand, st.cpanel);

    st.inc = *evaluate_activation(p, {});
    ScheduleSolution seed = solve_greedy(inst);
    if (!seed.active_beams.empty()) {
        auto ev = evaluate_activation(p, seed.active_beams);
        if (ev && better(*ev, st.inc)) st.inc = *ev;
    }
    bnb_dfs(st, 0);
    return st.inc;
}

ScheduleSolution solve_greedy(const ProblemInstance &inst) {
    inst.validate();
    Prep p = prepare(inst);
    const bool global = inst.capacity_mode == CapacityMode::global_n;
    const int K = inst.n_ues, B = inst.n_beams;
    const int N = inst.n_subchannels, Q = inst.q_slots;

    Mask served(K);
    int total = 0;
    std::vector<int> assignment(K, -1);
    std::vector<int> load(B, 0);
    std::vector<char> active(B, 0);
    int used[2] = {0, 0};
    int n_active = 0;

    for (;;) {
        // Rank inactive beams by marginal objective gain, lowest id on ties.
        std::vector<std::tuple<double, int, int>> order; // (-gain, beam, marg)
        for (int b = 0; b < B; ++b) {
            if (active[b] || p.flist[b].empty()) continue;
            const int pnl = inst.panel_of_beam[b];
            if (used[pnl] >= Q) continue;
            if (global && n_active >= N) continue;
            const int fresh = p.fset[b].count_minus(served);
            const int marg =
                global ? std::min(fresh, N - total) : std::min(fresh, N);
            const double gain = static_cast<double>(marg) - inst.lambda;
            if (gain > 0.0) order.emplace_back(-gain, b, marg);
        }
        std::sort(order.begin(), order.end());

        bool activated = false;
        for (const auto &[negg, b, marg] : order) {
            if (marg > 0) {
                int placed = 0;
                for (int k : p.flist[b]) {
                    if (placed == marg) break;
                    if (served.test(k)) continue;
                    assignment[k] = b;
                    served.set(k);
                    ++load[b];
                    ++total;
                    ++placed;
                }
                activated = true;
            } else {
                // Zero fresh coverage still pays when lambda < 0, provided a
                // terminal can move over from a beam serving two or more.
                for (int k : p.flist[b]) {
                    const int from = assignment[k];
                    if (from == -1 || load[from] < 2) continue;
                    --load[from];
                    assignment[k] = b;
                    ++load[b];
                    activated = true;
                    break;
                }
            }
            if (activated) {
                active[b] = 1;
                ++used[inst.panel_of_beam[b]];
                ++n_active;
                break;
            }
        }
        if (!activated) break;
    }

    ScheduleSolution sol;
    sol.assignment = std::move(assignment);
    for (int b = 0; b < B; ++b)
        if (active[b]) sol.active_beams.push_back(b);
    sol.served_count = total;
    sol.objective = static_cast<double>(total) -
                    inst.lambda * static_cast<double>(sol.active_beams.size());
    sol.per_panel_slots[0] = used[0];
    sol.per_panel_slots[1] = used[1];
    return sol;
}

bool check_solution(const ProblemInstance &inst, const ScheduleSolution &sol,
                    std::string *why) {
    auto fail = [&](const char *m) {
        if (why) *why = m;
        return false;
    };
    const int K = inst.n_ues, B = inst.n_beams;
    if (static_cast<int>(sol.assignment.size()) != K)
        return fail("assignment length differs from terminal count");

    std::vector<int> load(B, 0);
    int served = 0;
    for (int k = 0; k < K; ++k) {
        const int b = sol.assignment[k];
        if (b == -1) continue;
        if (b < 0 || b >= B) return fail("assigned beam id out of range");
        if (!inst.feasible[k][b])
            return fail("terminal assigned to an infeasible beam");
        ++load[b];
        ++served;
    }

    std::vector<int> act;
    for (int b = 0; b < B; ++b)
        if (load[b] > 0) act.push_back(b);
    if (act != sol.active_beams)
        return fail("active_beams does not match the assignment");

    int up[2] = {0, 0};
    for (int b : act) ++up[inst.panel_of_beam[b]];
    if (up[0] > inst.q_slots || up[1] > inst.q_slots)
        return fail("per-panel slot budget exceeded");
    if (up[0] != sol.per_panel_slots[0] || up[1] != sol.per_panel_slots[1])
        return fail("per_panel_slots bookkeeping wrong");

    if (inst.capacity_mode == CapacityMode::global_n) {
        if (served > inst.n_subchannels)
            return fail("served count exceeds the subchannel budget");
    } else {
        for (int b = 0; b < B; ++b)
            if (load[b] > inst.n_subchannels)
                return fail("beam load exceeds the subchannel budget");
    }

    if (served != sol.served_count) return fail("served_count bookkeeping wrong");
    const double obj =
        static_cast<double>(served) -
        inst.lambda * static_cast<double>(sol.active_beams.size());
    if (obj != sol.objective) return fail("objective bookkeeping wrong");
    return true;
}

} // namespace repsim
