#include "trl/expand.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace trl {

namespace {

struct PathEnum {
    const Hypergraph& g;
    int k;
    int ell;
    long long cap;
    std::vector<bool> blocked;
    std::vector<int> seq;
    long long count = 0;
    bool truncated = false;
    RootedCensus* census = nullptr;
    std::vector<std::vector<int>>* sink = nullptr;  // full paths when needed

    void dfs(int added) {
        if (truncated) return;
        if (added == ell) {
            ++count;
            if (count > cap) {
                truncated = true;
                --count;
                return;
            }
            if (census) {
                std::vector<int> end(seq.end() - (k - 1), seq.end());
                if (census->end_tuples.insert(end).second) census->witness[end] = seq;
            }
            if (sink) sink->push_back(seq);
            return;
        }
        std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
        for (int v : g.codegree_set(win)) {
            if (blocked[v]) continue;
            blocked[v] = true;
            seq.push_back(v);
            dfs(added + 1);
            seq.pop_back();
            blocked[v] = false;
            if (truncated) return;
        }
    }
};

}  // namespace

RootedCensus rooted_census(const Hypergraph& g, std::span<const int> x, int ell,
                           const std::vector<int>& forbidden, long long cap) {
    int k = g.k();
    if (static_cast<int>(x.size()) != k - 1) throw invalid_input("rooted_census: |x| != k-1");
    if (ell < 1) throw invalid_input("rooted_census: ell must be >= 1");
    RootedCensus c;
    c.root.assign(x.begin(), x.end());
    c.ell = ell;
    PathEnum e{g, k, ell, cap};
    e.blocked.assign(g.n(), false);
    for (int v : forbidden) e.blocked[v] = true;
    for (int v : x) e.blocked[v] = true;
    e.seq.assign(x.begin(), x.end());
    e.census = &c;
    e.dfs(0);
    c.path_count = e.count;
    c.truncated = e.truncated;
    return c;
}

namespace {

struct SpikeEnum {
    const Hypergraph& g;
    int k;
    int target_spikes;  // new spikes to add
    long long cap;
    std::vector<bool> blocked;
    std::vector<std::vector<int>> spikes;
    long long count = 0;
    bool truncated = false;
    RootedCensus* census = nullptr;

    bool spike_edges_ok(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> e(k);
        for (int j = 1; j <= k - 1; ++j) {
            int idx = 0;
            for (int q = k - j; q >= 1; --q) e[idx++] = a[q - 1];
            for (int q = 1; q <= j; ++q) e[idx++] = b[q - 1];
            if (!g.has_edge(e)) return false;
        }
        return true;
    }

    void dfs(int added) {
        if (truncated) return;
        if (added == target_spikes) {
            ++count;
            if (count > cap) {
                truncated = true;
                --count;
                return;
            }
            if (census) {
                const auto& end = spikes.back();
                if (census->end_tuples.insert(end).second) {
                    std::vector<int> flat;
                    for (const auto& s : spikes) flat.insert(flat.end(), s.begin(), s.end());
                    census->witness[end] = flat;
                }
            }
            return;
        }
        // choose the next spike as an ordered tuple of new vertices; the
        // j-th vertex of the spike narrows the admissible edges as we go
        std::vector<int> next(k - 1, -1);
        build_spike(next, 0, added);
    }

    void build_spike(std::vector<int>& next, int pos, int added) {
        if (truncated) return;
        if (pos == k - 1) {
            spikes.push_back(next);
            dfs(added + 1);
            spikes.pop_back();
            return;
        }
        const auto& prev = spikes.back();
        // the (pos+1)-th defining edge fixes vertex next[pos]:
        // {prev_{k-1-pos},...,prev_1, next_1,...,next_{pos+1}}
        std::vector<int> stem;
        for (int q = k - 1 - pos; q >= 1; --q) stem.push_back(prev[q - 1]);
        for (int q = 1; q <= pos; ++q) stem.push_back(next[q - 1]);
        for (int v : g.codegree_set(stem)) {
            if (blocked[v]) continue;
            blocked[v] = true;
            next[pos] = v;
            build_spike(next, pos + 1, added);
            next[pos] = -1;
            blocked[v] = false;
            if (truncated) return;
        }
    }
};

}  // namespace

RootedCensus rooted_spike_census(const Hypergraph& g, std::span<const int> x, int t,
                                 const std::vector<int>& forbidden, long long cap) {
    int k = g.k();
    if (static_cast<int>(x.size()) != k - 1)
        throw invalid_input("rooted_spike_census: |x| != k-1");
    if (t < 1) throw invalid_input("rooted_spike_census: t must be >= 1");
    RootedCensus c;
    c.root.assign(x.begin(), x.end());
    c.ell = t * (k - 1);
    SpikeEnum e{g, k, t, cap};
    e.blocked.assign(g.n(), false);
    for (int v : forbidden) e.blocked[v] = true;
    for (int v : x) e.blocked[v] = true;
    e.spikes.push_back(std::vector<int>(x.begin(), x.end()));
    e.census = &c;
    e.dfs(0);
    c.path_count = e.count;
    c.truncated = e.truncated;
    return c;
}

DlCensus dl_census(const Hypergraph& g, std::span<const int> x, int ell, long long cap) {
    int k = g.k();
    if (ell <= k - 1) throw invalid_input("dl_census: requires ell > k-1");
    DlCensus d;
    d.ell = ell;
    d.counts.assign(ell - (k - 1) + 1, 0);

    PathEnum e{g, k, ell, cap};
    e.blocked.assign(g.n(), false);
    for (int v : x) e.blocked[v] = true;
    e.seq.assign(x.begin(), x.end());
    std::vector<std::vector<int>> paths;
    e.sink = &paths;
    e.dfs(0);
    d.truncated = e.truncated;

    // group by end tuple, then classify unordered pairs by shared internal
    // vertex count
    std::map<std::vector<int>, std::vector<size_t>> by_end;
    for (size_t i = 0; i < paths.size(); ++i)
        by_end[std::vector<int>(paths[i].end() - (k - 1), paths[i].end())].push_back(i);
    for (auto& [end, idxs] : by_end) {
        for (size_t a = 0; a < idxs.size(); ++a) {
            std::vector<int> ia(paths[idxs[a]].begin() + (k - 1), paths[idxs[a]].end() - (k - 1));
            std::sort(ia.begin(), ia.end());
            for (size_t b = a + 1; b < idxs.size(); ++b) {
                std::vector<int> ib(paths[idxs[b]].begin() + (k - 1),
                                    paths[idxs[b]].end() - (k - 1));
                std::sort(ib.begin(), ib.end());
                std::vector<int> shared;
                std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(),
                                      std::back_inserter(shared));
                ++d.counts[shared.size()];
            }
        }
    }
    return d;
}

std::string census_json(const RootedCensus& c) {
    nlohmann::ordered_json j;
    j["root"] = c.root;
    j["ell"] = c.ell;
    j["path_count"] = c.path_count;
    j["end_tuple_count"] = c.end_tuples.size();
    j["truncated"] = c.truncated;
    return j.dump(2);
}

bool census_jensen_holds(const RootedCensus& c,
                         const std::map<std::vector<int>, long long>& per_end_counts) {
    long long q = static_cast<long long>(per_end_counts.size());
    long long total = 0;
    long long lhs = 0;
    for (const auto& [end, m] : per_end_counts) {
        total += m;
        lhs += m * (m - 1) / 2;
    }
    if (total != c.path_count) return false;
    if (q == 0) return c.path_count == 0;
    // exact discrete form: 2*q*lhs >= total^2 - q*total
    return 2 * q * lhs >= total * total - q * total;
}

namespace {

struct GreedyExt {
    const Hypergraph& g;
    int k, ell;
    const std::vector<int>& s_sorted;
    GoodnessOracle& oracle;
    const ExtensionPolicy& policy;
    std::vector<bool> blocked;
    std::vector<int> seq;
    std::vector<TightPath> out;
    bool done = false;

    void dfs(int added) {
        if (done) return;
        if (added == ell) {
            out.push_back(TightPath{seq});
            if (static_cast<long long>(out.size()) >= policy.cap) done = true;
            return;
        }
        std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
        for (int v : g.codegree_set(win)) {
            if (blocked[v]) continue;
            if (added + 1 < ell) {
                std::vector<int> next_win(seq.end() - (k - 2), seq.end());
                next_win.push_back(v);
                // level for step i=added+k: ell - (i-k+1) = ell - added - 1
                if (!oracle.is_good(next_win, s_sorted, ell - added - 1)) continue;
            }
            blocked[v] = true;
            seq.push_back(v);
            dfs(added + 1);
            seq.pop_back();
            blocked[v] = false;
            if (done) return;
        }
    }
};

}  // namespace

std::vector<TightPath> greedy_good_extension(const Hypergraph& g, std::span<const int> x, int ell,
                                             const std::vector<int>& s, const std::vector<int>& s2,
                                             const GoodnessParams& gp,
                                             const ExtensionPolicy& policy) {
    int k = g.k();
    if (static_cast<int>(x.size()) != k - 1)
        throw invalid_input("greedy_good_extension: |x| != k-1");
    std::vector<int> ss = s;
    std::sort(ss.begin(), ss.end());
    GoodnessOracle oracle(g, gp);
    if (policy.sample) {
        // follow sample_count independent randomized branches
        std::vector<TightPath> out;
        for (int t = 0; t < policy.sample_count; ++t) {
            Rng rng(mix_seed(policy.seed, static_cast<uint64_t>(t)));
            std::vector<int> seq(x.begin(), x.end());
            std::vector<bool> blocked(g.n(), false);
            for (int v : s) blocked[v] = true;
            for (int v : s2) blocked[v] = true;
            for (int v : x) blocked[v] = true;
            bool alive = true;
            for (int added = 0; added < ell && alive; ++added) {
                std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
                std::vector<int> cands;
                for (int v : g.codegree_set(win)) {
                    if (blocked[v]) continue;
                    if (added + 1 < ell) {
                        std::vector<int> next_win(seq.end() - (k - 2), seq.end());
                        next_win.push_back(v);
                        if (!oracle.is_good(next_win, ss, ell - added - 1)) continue;
                    }
                    cands.push_back(v);
                }
                if (cands.empty()) {
                    alive = false;
                    break;
                }
                int v = cands[rng.next_below(cands.size())];
                blocked[v] = true;
                seq.push_back(v);
            }
            if (alive) out.push_back(TightPath{seq});
        }
        return out;
    }
    GreedyExt e{g, k, ell, ss, oracle, policy};
    e.blocked.assign(g.n(), false);
    for (int v : s) e.blocked[v] = true;
    for (int v : s2) e.blocked[v] = true;
    for (int v : x) e.blocked[v] = true;
    e.seq.assign(x.begin(), x.end());
    e.dfs(0);
    return e.out;
}

}  // namespace trl
