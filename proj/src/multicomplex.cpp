#include "trl/multicomplex.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace trl {

int Multicomplex::add_edge(std::vector<int> vertices, std::vector<int> boundary) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw invalid_input("Multicomplex: repeated vertex in edge");
    if (vertices.size() == 1 && boundary.empty()) boundary = {0};
    std::sort(boundary.begin(), boundary.end());
    int id = static_cast<int>(edges_.size());
    for (int v : vertices) num_vertices_ = std::max(num_vertices_, v + 1);
    edges_.push_back(McEdge{id, std::move(vertices), std::move(boundary)});
    alive_.push_back(true);
    return id;
}

std::vector<int> Multicomplex::edges_of_uniformity(int u) const {
    std::vector<int> out;
    for (const auto& e : edges_)
        if (alive_[e.id] && static_cast<int>(e.vertices.size()) == u) out.push_back(e.id);
    return out;
}

std::vector<int> Multicomplex::coboundary(int id) const {
    std::vector<int> out;
    int u = static_cast<int>(edges_.at(id).vertices.size());
    for (const auto& e : edges_) {
        if (!alive_[e.id] || static_cast<int>(e.vertices.size()) != u + 1) continue;
        if (std::binary_search(e.boundary.begin(), e.boundary.end(), id)) out.push_back(e.id);
    }
    return out;
}

std::vector<int> Multicomplex::edges_on(std::span<const int> sorted_vertices) const {
    std::vector<int> out;
    for (const auto& e : edges_) {
        if (!alive_[e.id]) continue;
        if (e.vertices.size() == sorted_vertices.size() &&
            std::equal(e.vertices.begin(), e.vertices.end(), sorted_vertices.begin()))
            out.push_back(e.id);
    }
    return out;
}

void Multicomplex::kill_edge(int id) { alive_.at(id) = false; }

int Multicomplex::max_uniformity() const {
    int m = 0;
    for (const auto& e : edges_)
        if (alive_[e.id]) m = std::max(m, static_cast<int>(e.vertices.size()));
    return m;
}

std::optional<std::string> Multicomplex::validate() const {
    for (const auto& e : edges_) {
        if (!alive_[e.id] || e.id == 0) continue;
        int u = static_cast<int>(e.vertices.size());
        if (static_cast<int>(e.boundary.size()) != std::max(u, 1))
            return "edge " + std::to_string(e.id) + ": boundary size != uniformity";
        if (u == 1) {
            if (e.boundary != std::vector<int>{0})
                return "edge " + std::to_string(e.id) + ": 1-edge boundary must be {empty}";
            continue;
        }
        // exactly one boundary edge omitting each vertex
        std::set<uint64_t> seen_sets;
        for (int bid : e.boundary) {
            if (bid < 0 || bid >= static_cast<int>(edges_.size()) || !alive_[bid])
                return "edge " + std::to_string(e.id) + ": dangling boundary id";
            const auto& b = edges_[bid];
            if (b.vertices.size() + 1 != e.vertices.size())
                return "edge " + std::to_string(e.id) + ": boundary uniformity mismatch";
            if (!std::includes(e.vertices.begin(), e.vertices.end(), b.vertices.begin(),
                               b.vertices.end()))
                return "edge " + std::to_string(e.id) + ": boundary not a vertex subset";
            seen_sets.insert(subset_rank(b.vertices));
        }
        if (seen_sets.size() != e.vertices.size())
            return "edge " + std::to_string(e.id) + ": boundary misses a vertex omission";
    }
    // consistency: e_{xy} = e_{yx}
    auto boundary_omitting = [&](const McEdge& e, int x) -> int {
        for (int bid : e.boundary) {
            const auto& b = edges_[bid];
            if (!std::binary_search(b.vertices.begin(), b.vertices.end(), x)) return bid;
        }
        return -1;
    };
    for (const auto& e : edges_) {
        if (!alive_[e.id] || e.vertices.size() < 2) continue;
        for (int x : e.vertices) {
            for (int y : e.vertices) {
                if (x == y) continue;
                int ex = boundary_omitting(e, x);
                int ey = boundary_omitting(e, y);
                if (ex < 0 || ey < 0) return "edge " + std::to_string(e.id) + ": bad boundary";
                if (edges_[ex].vertices.size() < 1) continue;
                int exy = boundary_omitting(edges_[ex], y);
                int eyx = boundary_omitting(edges_[ey], x);
                if (exy != eyx)
                    return "edge " + std::to_string(e.id) + ": e_xy != e_yx at (" +
                           std::to_string(x) + "," + std::to_string(y) + ")";
            }
        }
    }
    return std::nullopt;
}

Multicomplex Multicomplex::restricted_to(const std::vector<int>& keep_ids) const {
    std::set<int> keep(keep_ids.begin(), keep_ids.end());
    keep.insert(0);
    Multicomplex out = *this;
    for (const auto& e : edges_) {
        if (!alive_[e.id]) continue;
        if (!keep.count(e.id)) out.kill_edge(e.id);
    }
    return out;
}

namespace {

struct LinkSearch {
    const Multicomplex& m;
    int k;
    const OrderedEdge& u;
    const OrderedEdge& v;
    std::vector<int> w;
    std::vector<int> eu, ev;

    bool boundaries_meet(int a, int b) const {
        const auto& ba = m.edge(a).boundary;
        const auto& bb = m.edge(b).boundary;
        for (int x : ba)
            if (std::binary_search(bb.begin(), bb.end(), x)) return true;
        return false;
    }

    // candidate k-edges on the sorted set `verts`, ascending id
    std::vector<int> kedges_on(std::vector<int> verts) const {
        std::sort(verts.begin(), verts.end());
        if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) return {};
        return m.edges_on(verts);
    }

    // vertex set for e_{j,side}: {side_j..side_{k-1}, w_1..w_j} (1-based j)
    std::vector<int> stage_set(const std::vector<int>& order, int j, int wj) const {
        std::vector<int> s;
        for (int q = j; q <= k - 1; ++q) s.push_back(order[q - 1]);
        for (int q = 1; q <= j - 1; ++q) s.push_back(w[q - 1]);
        s.push_back(wj);
        return s;
    }

    bool search(int j) {
        if (j == k) {
            return boundaries_meet(eu.back(), ev.back());
        }
        for (int wj = 0; wj < m.num_vertices(); ++wj) {
            auto cu = kedges_on(stage_set(u.order, j, wj));
            if (cu.empty()) continue;
            auto cv = kedges_on(stage_set(v.order, j, wj));
            if (cv.empty()) continue;
            w.push_back(wj);
            for (int a : cu) {
                if (j == 1) {
                    const auto& ba = m.edge(a).boundary;
                    if (!std::binary_search(ba.begin(), ba.end(), u.id)) continue;
                } else if (!boundaries_meet(eu.back(), a)) {
                    continue;
                }
                eu.push_back(a);
                for (int b : cv) {
                    if (j == 1) {
                        const auto& bb = m.edge(b).boundary;
                        if (!std::binary_search(bb.begin(), bb.end(), v.id)) continue;
                    } else if (!boundaries_meet(ev.back(), b)) {
                        continue;
                    }
                    ev.push_back(b);
                    if (search(j + 1)) return true;
                    ev.pop_back();
                }
                eu.pop_back();
            }
            w.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<TightLink> find_tight_link(const Multicomplex& m, const OrderedEdge& u,
                                         const OrderedEdge& v) {
    int k = m.max_uniformity();
    if (k < 2) return std::nullopt;
    auto check_ordered = [&](const OrderedEdge& oe) {
        const auto& e = m.edge(oe.id);
        if (static_cast<int>(e.vertices.size()) != k - 1)
            throw invalid_input("find_tight_link: endpoint is not a (k-1)-edge");
        std::vector<int> s = oe.order;
        std::sort(s.begin(), s.end());
        if (s != e.vertices) throw invalid_input("find_tight_link: order does not match edge");
    };
    check_ordered(u);
    check_ordered(v);
    LinkSearch ls{m, k, u, v};
    if (!ls.search(1)) return std::nullopt;
    TightLink link;
    link.u = u;
    link.v = v;
    link.w = ls.w;
    link.eu = ls.eu;
    link.ev = ls.ev;
    return link;
}

namespace {

std::vector<OrderedEdge> all_ordered_kminus1_edges(const Multicomplex& m) {
    int k = m.max_uniformity();
    std::vector<OrderedEdge> out;
    for (int id : m.edges_of_uniformity(k - 1)) {
        std::vector<int> perm = m.edge(id).vertices;
        std::sort(perm.begin(), perm.end());
        do {
            out.push_back(OrderedEdge{id, perm});
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

}  // namespace

bool is_tightly_linked(const Multicomplex& m) {
    auto ordered = all_ordered_kminus1_edges(m);
    if (ordered.empty()) return false;
    size_t total = ordered.size() * ordered.size();
    int ok = 1;
#pragma omp parallel for reduction(& : ok) num_threads(thread_budget()) schedule(dynamic, 1)
    for (size_t idx = 0; idx < total; ++idx) {
        if (!ok) continue;
        const auto& a = ordered[idx / ordered.size()];
        const auto& b = ordered[idx % ordered.size()];
        if (!find_tight_link(m, a, b)) ok = 0;
    }
    return ok != 0;
}

bool is_tightly_linked_serial(const Multicomplex& m) {
    auto ordered = all_ordered_kminus1_edges(m);
    if (ordered.empty()) return false;
    for (const auto& a : ordered)
        for (const auto& b : ordered)
            if (!find_tight_link(m, a, b)) return false;
    return true;
}

std::optional<std::vector<int>> link_to_path(const Multicomplex& m, const TightLink& link) {
    int k = m.max_uniformity();
    // required edge order: e_{1,u}..e_{k-1,u}, e_{k-1,v}..e_{1,v}
    std::vector<int> stages = link.eu;
    for (auto it = link.ev.rbegin(); it != link.ev.rend(); ++it) stages.push_back(*it);
    int num_stages = static_cast<int>(stages.size());
    std::vector<std::set<int>> stage_sets(num_stages);
    for (int t = 0; t < num_stages; ++t) {
        const auto& vs = m.edge(stages[t]).vertices;
        stage_sets[t] = std::set<int>(vs.begin(), vs.end());
    }
    std::set<int> target(m.edge(link.v.id).vertices.begin(), m.edge(link.v.id).vertices.end());

    struct State {
        std::vector<int> win;
        int stage;
        bool operator<(const State& o) const {
            return stage != o.stage ? stage < o.stage : win < o.win;
        }
    };
    State start{link.u.order, -1};
    std::map<State, std::pair<State, int>> parent;  // state -> (prev, appended vertex)
    std::vector<State> frontier{start};
    std::set<State> seen{start};
    int max_steps = 12 * k;
    for (int step = 0; step < max_steps && !frontier.empty(); ++step) {
        std::vector<State> next;
        for (const auto& st : frontier) {
            if (st.stage == num_stages - 1) {
                std::set<int> cur(st.win.begin(), st.win.end());
                if (cur == target) {
                    // reconstruct
                    std::vector<int> appended;
                    State c = st;
                    while (!(c.win == start.win && c.stage == start.stage)) {
                        auto it = parent.find(c);
                        appended.push_back(it->second.second);
                        c = it->second.first;
                    }
                    std::vector<int> seq = link.u.order;
                    for (auto it = appended.rbegin(); it != appended.rend(); ++it)
                        seq.push_back(*it);
                    return seq;
                }
            }
            for (int t = std::max(0, st.stage); t <= st.stage + 1 && t < num_stages; ++t) {
                // append z so that {win[0..k-2], z} = stage set t
                std::set<int> need = stage_sets[t];
                bool subset = true;
                for (int x : st.win) {
                    auto it = need.find(x);
                    if (it == need.end()) {
                        subset = false;
                        break;
                    }
                    need.erase(it);
                }
                if (!subset || need.size() != 1) continue;
                int z = *need.begin();
                State ns;
                ns.win.assign(st.win.begin() + 1, st.win.end());
                ns.win.push_back(z);
                ns.stage = t;
                if (seen.insert(ns).second) {
                    parent[ns] = {st, z};
                    next.push_back(ns);
                }
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

}  // namespace trl

namespace trl {

bool is_d_equitable(const Multicomplex& m, const std::vector<double>& densities,
                    std::string* why) {
    int kmax = m.max_uniformity();
    // exactly one 1-edge per vertex
    std::vector<int> ones(m.num_vertices(), 0);
    for (int id : m.edges_of_uniformity(1)) ++ones[m.edge(id).vertices[0]];
    for (int v = 0; v < m.num_vertices(); ++v) {
        if (ones[v] != 1) {
            if (why) *why = "vertex " + std::to_string(v) + " has " +
                            std::to_string(ones[v]) + " 1-edges";
            return false;
        }
    }
    for (int i = 2; i <= kmax; ++i) {
        long long want = std::llround(1.0 / densities.at(i));
        // group i-edges by boundary set; admissible boundaries come from the
        // existing (i-1)-edges: enumerate collections via the i-edges present
        // plus any collection supporting zero edges over an i-set of vertices
        std::map<std::vector<int>, long long> by_boundary;
        for (int id : m.edges_of_uniformity(i)) {
            auto bd = m.edge(id).boundary;
            std::sort(bd.begin(), bd.end());
            ++by_boundary[bd];
        }
        for (const auto& [bd, cnt] : by_boundary) {
            if (cnt != want) {
                if (why) *why = "a boundary at uniformity " + std::to_string(i) +
                                " supports " + std::to_string(cnt) + " edges, wants " +
                                std::to_string(want);
                return false;
            }
        }
        // zero-support admissible boundaries: walk i-sets of vertices and all
        // per-vertex choices of supporting (i-1)-edges with consistent unions
        bool bad = false;
        for_each_subset(m.num_vertices(), i, [&](std::span<const int> x) {
            if (bad) return;
            std::vector<std::vector<int>> choices;  // per omitted vertex
            for (int omit = 0; omit < i; ++omit) {
                std::vector<int> sub;
                for (int q = 0; q < i; ++q)
                    if (q != omit) sub.push_back(x[q]);
                choices.push_back(m.edges_on(sub));
                if (choices.back().empty()) return;  // no admissible S here
            }
            std::vector<int> pick(i, 0);
            auto rec = [&](auto&& self, int pos) -> void {
                if (bad) return;
                if (pos == i) {
                    std::vector<int> s;
                    std::set<int> uni;
                    for (int q = 0; q < i; ++q) {
                        s.push_back(choices[q][pick[q]]);
                        for (int b : m.edge(choices[q][pick[q]]).boundary) uni.insert(b);
                    }
                    if (uni.size() != binom(i, i - 2)) return;  // not admissible
                    std::sort(s.begin(), s.end());
                    auto it = by_boundary.find(s);
                    if (it == by_boundary.end()) {
                        if (why) *why = "an admissible boundary supports 0 edges";
                        bad = true;
                    }
                    return;
                }
                for (size_t c = 0; c < choices[pos].size(); ++c) {
                    pick[pos] = static_cast<int>(c);
                    self(self, pos + 1);
                }
            };
            rec(rec, 0);
        });
        if (bad) return false;
    }
    return true;
}

}  // namespace trl
