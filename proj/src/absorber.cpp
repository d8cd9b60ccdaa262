#include <algorithm>
#include <set>

#include "trl/pipeline.hpp"

namespace trl {

namespace {

// direct template: sequence a_1..a_{k-1} u b_1..b_{k-1} whose k-windows are
// edges both with and without u
struct DirectSearch {
    const Hypergraph& g;
    int k;
    int u;
    const std::vector<bool>& blocked;
    uint64_t nodes = 0, cap;
    bool budget_hit = false;
    std::vector<int> a, b;

    bool choose_b(int j) {
        if (++nodes > cap) {
            budget_hit = true;
            return false;
        }
        if (j == k) return true;
        // with-u window p=j+1: {a_{j+1}..a_{k-1}, u, b_1..b_j}
        // without-u window p=j: {a_j..a_{k-1}, b_1..b_j}
        std::vector<int> stem_with, stem_without;
        for (int q = j + 1; q <= k - 1; ++q) stem_with.push_back(a[q - 1]);
        stem_with.push_back(u);
        for (int q = 1; q <= j - 1; ++q) stem_with.push_back(b[q - 1]);
        for (int q = j; q <= k - 1; ++q) stem_without.push_back(a[q - 1]);
        for (int q = 1; q <= j - 1; ++q) stem_without.push_back(b[q - 1]);
        for (int v : g.codegree_set(stem_with)) {
            if (blocked[v] || v == u) continue;
            bool used = false;
            for (int q = 0; q < k - 1; ++q)
                if (a[q] == v) used = true;
            for (int q = 0; q < j - 1; ++q)
                if (b[q] == v) used = true;
            if (used) continue;
            std::vector<int> wo = stem_without;
            wo.push_back(v);
            if (!g.has_edge(wo)) continue;
            b[j - 1] = v;
            if (choose_b(j + 1)) return true;
            b[j - 1] = -1;
            if (budget_hit) return false;
        }
        return false;
    }
};

AbsorberOutcome direct_absorber(const Hypergraph& g, int u, const std::vector<int>& forbidden,
                                const PipelineConfig& cfg) {
    int k = g.k();
    AbsorberOutcome out;
    std::vector<bool> blocked(g.n(), false);
    for (int v : forbidden) blocked[v] = true;
    DirectSearch ds{g, k, u, blocked, 0, cfg.node_cap};
    // enumerate candidate a-tuples from edges containing u
    for (const auto& e : g.edges()) {
        if (!std::binary_search(e.begin(), e.end(), u)) continue;
        bool ok = true;
        for (int v : e)
            if (v != u && blocked[v]) ok = false;
        if (!ok) continue;
        std::vector<int> rest;
        for (int v : e)
            if (v != u) rest.push_back(v);
        std::sort(rest.begin(), rest.end());
        do {
            ds.a = rest;
            ds.b.assign(k - 1, -1);
            if (ds.choose_b(1)) {
                AbsorberGadget gad;
                gad.u = u;
                gad.path_with.seq = ds.a;
                gad.path_with.seq.push_back(u);
                gad.path_with.seq.insert(gad.path_with.seq.end(), ds.b.begin(), ds.b.end());
                gad.path_without.seq = ds.a;
                gad.path_without.seq.insert(gad.path_without.seq.end(), ds.b.begin(),
                                            ds.b.end());
                out.gadget = gad;
                out.nodes = ds.nodes;
                return out;
            }
            if (ds.budget_hit) {
                out.budget_exhausted = true;
                out.nodes = ds.nodes;
                return out;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
    }
    out.nodes = ds.nodes;
    return out;
}

// ordered spike successor tuples: next[0..k-2] with interleave edges from prev
struct SpikeGrow {
    const Hypergraph& g;
    int k;
    std::vector<bool>& blocked;

    // first admissible next spike after `prev`, all vertices unblocked;
    // optional co-constraint: also interleave edges from `also` (for the
    // joint last spike)
    std::optional<std::vector<int>> grow(const std::vector<int>& prev,
                                         const std::vector<int>* also) {
        std::vector<int> next(k - 1, -1);
        if (rec(prev, also, next, 0)) return next;
        return std::nullopt;
    }

    bool edge_at(const std::vector<int>& a, const std::vector<int>& nxt, int j) const {
        // {a_{k-j},...,a_1, n_1,...,n_j}
        std::vector<int> e;
        for (int q = k - j; q >= 1; --q) e.push_back(a[q - 1]);
        for (int q = 1; q <= j; ++q) e.push_back(nxt[q - 1]);
        return g.has_edge(e);
    }

    bool rec(const std::vector<int>& prev, const std::vector<int>* also, std::vector<int>& next,
             int pos) {
        if (pos == k - 1) return true;
        // edge j=pos+1 fixes next[pos]
        std::vector<int> stem;
        for (int q = k - 1 - pos; q >= 1; --q) stem.push_back(prev[q - 1]);
        for (int q = 1; q <= pos; ++q) stem.push_back(next[q - 1]);
        for (int v : g.codegree_set(stem)) {
            if (blocked[v]) continue;
            next[pos] = v;
            if (also && !edge_at(*also, next, pos + 1)) {
                next[pos] = -1;
                continue;
            }
            blocked[v] = true;
            if (rec(prev, also, next, pos + 1)) return true;
            blocked[v] = false;
            next[pos] = -1;
        }
        return false;
    }
};

AbsorberOutcome spiked_absorber(const Hypergraph& g, int u, const std::vector<int>& forbidden,
                                const PipelineConfig& cfg) {
    int k = g.k();
    int t = std::max(1, cfg.spiked_t);
    AbsorberOutcome out;
    std::vector<bool> blocked(g.n(), false);
    for (int v : forbidden) blocked[v] = true;
    if (blocked[u]) throw invalid_input("build_absorber: u is forbidden");

    // stage 1: (2k-1)-path u_tuple, u, x_1 (with-u windows only)
    std::vector<int> utup, x1;
    {
        for (const auto& e : g.edges()) {
            if (!std::binary_search(e.begin(), e.end(), u)) continue;
            bool ok = true;
            for (int v : e)
                if (v != u && blocked[v]) ok = false;
            if (!ok) continue;
            std::vector<int> rest;
            for (int v : e)
                if (v != u) rest.push_back(v);
            std::sort(rest.begin(), rest.end());
            do {
                // grow x_1 greedily: windows {rest_{j+1}..rest_{k-1}, u, x_1..x_j}
                std::vector<int> cand(k - 1, -1);
                std::vector<bool> local = blocked;
                local[u] = true;
                for (int v : rest) local[v] = true;
                auto rec = [&](auto&& self, int pos) -> bool {
                    if (pos == k - 1) return true;
                    std::vector<int> stem;
                    for (int q = pos + 2; q <= k - 1; ++q) stem.push_back(rest[q - 1]);
                    stem.push_back(u);
                    for (int q = 1; q <= pos; ++q) stem.push_back(cand[q - 1]);
                    for (int v : g.codegree_set(stem)) {
                        if (local[v]) continue;
                        cand[pos] = v;
                        local[v] = true;
                        if (self(self, pos + 1)) return true;
                        local[v] = false;
                        cand[pos] = -1;
                    }
                    return false;
                };
                if (rec(rec, 0)) {
                    utup = rest;
                    x1 = cand;
                }
            } while (utup.empty() && std::next_permutation(rest.begin(), rest.end()));
            if (!utup.empty()) break;
        }
    }
    if (utup.empty()) return out;
    for (int v : utup) blocked[v] = true;
    for (int v : x1) blocked[v] = true;
    blocked[u] = true;

    // stage 2: upper spikes x_1..x_t, lower spikes rev(utup), y_1..y_t
    SpikeGrow grow{g, k, blocked};
    std::vector<std::vector<int>> xs{x1}, ys;
    std::vector<int> rev_u(utup.rbegin(), utup.rend());
    {
        std::vector<int> prev = rev_u;
        for (int i = 0; i < t; ++i) {
            auto next = grow.grow(prev, nullptr);
            if (!next) return out;
            ys.push_back(*next);
            prev = *next;
        }
    }
    for (int i = 1; i < t; ++i) {
        auto next = grow.grow(xs.back(), nullptr);
        if (!next) return out;
        xs.push_back(*next);
    }
    // stage 3: joint last spike v with interleave edges from both x_t and y_t
    auto vtup = grow.grow(xs.back(), &ys.back());
    if (!vtup) return out;

    // stage 4: connectors x_j -> rev(y_j)
    std::vector<TightPath> conns;
    std::vector<int> avoid;
    for (int vv = 0; vv < g.n(); ++vv)
        if (blocked[vv]) avoid.push_back(vv);
    for (int j = 0; j < t; ++j) {
        auto co = connect(g, xs[j], ys[j], avoid, {}, cfg.connector_max_len, cfg.node_cap);
        if (!co.path) {
            out.budget_exhausted = co.budget_exhausted;
            return out;
        }
        conns.push_back(*co.path);
        for (size_t i = k - 1; i + (k - 1) < co.path->seq.size(); ++i)
            avoid.push_back(co.path->seq[i]);
    }

    // stage 5: assemble both traversals
    auto append_from = [&](std::vector<int>& seq, const std::vector<int>& piece) {
        seq.insert(seq.end(), piece.begin() + (k - 1), piece.end());
    };
    auto fwd = [&](const TightPath& p) { return p.seq; };
    auto bwd = [&](const TightPath& p) { return p.reversed().seq; };

    AbsorberGadget gad;
    gad.u = u;
    {
        // with u: utup, u, x_1, P'_1, y_2, rev P'_2, x_3, ...
        std::vector<int>& s = gad.path_with.seq;
        s = utup;
        s.push_back(u);
        s.insert(s.end(), xs[0].begin(), xs[0].end());
        for (int j = 0; j < t; ++j) {
            if (j % 2 == 0) {
                append_from(s, fwd(conns[j]));  // now at rev(y_j)
                if (j + 1 < t) {
                    s.insert(s.end(), ys[j + 1].begin(), ys[j + 1].end());
                }
            } else {
                append_from(s, bwd(conns[j]));  // now at rev(x_j)
                if (j + 1 < t) {
                    s.insert(s.end(), xs[j + 1].begin(), xs[j + 1].end());
                }
            }
        }
        s.insert(s.end(), vtup->begin(), vtup->end());
    }
    {
        // without u: utup, y_1, rev P'_1, x_2, P'_2, y_3, ...
        std::vector<int>& s = gad.path_without.seq;
        s = utup;
        s.insert(s.end(), ys[0].begin(), ys[0].end());
        for (int j = 0; j < t; ++j) {
            if (j % 2 == 0) {
                append_from(s, bwd(conns[j]));  // now at rev(x_j)
                if (j + 1 < t) {
                    s.insert(s.end(), xs[j + 1].begin(), xs[j + 1].end());
                }
            } else {
                append_from(s, fwd(conns[j]));  // now at rev(y_j)
                if (j + 1 < t) {
                    s.insert(s.end(), ys[j + 1].begin(), ys[j + 1].end());
                }
            }
        }
        s.insert(s.end(), vtup->begin(), vtup->end());
    }
    if (!gad.valid(g)) return out;
    out.gadget = gad;
    return out;
}

}  // namespace

AbsorberOutcome build_absorber(const Hypergraph& g, int u, const std::vector<int>& forbidden,
                               const PipelineConfig& cfg) {
    for (int v : forbidden)
        if (v == u) throw invalid_input("build_absorber: u is forbidden");
    if (cfg.spiked_absorber) return spiked_absorber(g, u, forbidden, cfg);
    return direct_absorber(g, u, forbidden, cfg);
}

}  // namespace trl
