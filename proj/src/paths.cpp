#include "trl/paths.hpp"

#include <algorithm>
#include <set>

namespace trl {

std::vector<int> TightPath::head_tuple(int k) const {
    if (static_cast<int>(seq.size()) < k - 1) throw invalid_input("path shorter than k-1");
    return {seq.begin(), seq.begin() + (k - 1)};
}

std::vector<int> TightPath::tail_tuple(int k) const {
    if (static_cast<int>(seq.size()) < k - 1) throw invalid_input("path shorter than k-1");
    return {seq.end() - (k - 1), seq.end()};
}

TightPath TightPath::reversed() const {
    TightPath p;
    p.seq.assign(seq.rbegin(), seq.rend());
    return p;
}

namespace {
bool all_distinct(std::span<const int> xs) {
    std::vector<int> s(xs.begin(), xs.end());
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}
}  // namespace

bool is_tight_path(const Hypergraph& g, std::span<const int> seq) {
    int k = g.k();
    if (static_cast<int>(seq.size()) < k - 1) throw invalid_input("is_tight_path: too short");
    for (int v : seq)
        if (v < 0 || v >= g.n()) throw invalid_input("is_tight_path: vertex out of range");
    if (!all_distinct(seq)) throw invalid_input("is_tight_path: repeated vertex");
    for (size_t i = 0; i + k <= seq.size(); ++i)
        if (!g.has_edge(seq.subspan(i, k))) return false;
    return true;
}

bool is_tight_cycle(const Hypergraph& g, std::span<const int> cyc) {
    int k = g.k(), n = g.n();
    if (n <= k) throw degenerate_instance("is_tight_cycle: requires n >= k+1");
    if (static_cast<int>(cyc.size()) != n) throw invalid_input("is_tight_cycle: not spanning");
    if (!all_distinct(cyc)) throw invalid_input("is_tight_cycle: repeated vertex");
    std::vector<int> w(k);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) w[j] = cyc[(i + j) % n];
        if (!g.has_edge(w)) return false;
    }
    return true;
}

bool is_spike_path(const Hypergraph& g, const SpikePath& sp) {
    int k = g.k();
    const auto& sp_t = sp.spikes;
    if (sp_t.empty()) throw invalid_input("is_spike_path: no spikes");
    std::vector<int> all;
    for (const auto& a : sp_t) {
        if (static_cast<int>(a.size()) != k - 1)
            throw invalid_input("is_spike_path: spike arity != k-1");
        all.insert(all.end(), a.begin(), a.end());
    }
    if (!all_distinct(all)) throw invalid_input("is_spike_path: spikes overlap");
    std::vector<int> e(k);
    for (size_t i = 0; i + 1 < sp_t.size(); ++i) {
        const auto& a = sp_t[i];
        const auto& b = sp_t[i + 1];
        for (int j = 1; j <= k - 1; ++j) {
            // {a_{k-j},...,a_1, b_1,...,b_j}
            int idx = 0;
            for (int q = k - j; q >= 1; --q) e[idx++] = a[q - 1];
            for (int q = 1; q <= j; ++q) e[idx++] = b[q - 1];
            if (!g.has_edge(e)) return false;
        }
    }
    return true;
}

std::vector<int> AbsorberGadget::vertices() const {
    std::vector<int> v = path_with.seq;
    std::sort(v.begin(), v.end());
    return v;
}

bool AbsorberGadget::valid(const Hypergraph& g) const {
    int k = g.k();
    if (!is_tight_path(g, path_with.seq)) return false;
    if (!is_tight_path(g, path_without.seq)) return false;
    if (path_with.head_tuple(k) != path_without.head_tuple(k)) return false;
    if (path_with.tail_tuple(k) != path_without.tail_tuple(k)) return false;
    std::vector<int> with = path_with.seq, without = path_without.seq;
    std::sort(with.begin(), with.end());
    std::sort(without.begin(), without.end());
    std::vector<int> diff;
    std::set_difference(with.begin(), with.end(), without.begin(), without.end(),
                        std::back_inserter(diff));
    return diff == std::vector<int>{u} && with.size() == without.size() + 1;
}

std::optional<TightPath> ReservoirPath::witness_from_decomposition(
    std::span<const int> skipped) const {
    if (!decomposition) return std::nullopt;
    const auto& d = *decomposition;
    std::set<int> skip(skipped.begin(), skipped.end());
    TightPath out;
    out.seq = base.seq;
    // splice right-to-left so earlier ranges stay valid
    for (auto it = d.splices.rbegin(); it != d.splices.rend(); ++it) {
        if (!skip.count(it->u)) continue;
        out.seq.erase(out.seq.begin() + it->begin, out.seq.begin() + it->end);
        out.seq.insert(out.seq.begin() + it->begin, it->without_interior.begin(),
                       it->without_interior.end());
    }
    return out;
}

namespace {

// DFS for a tight path visiting exactly the given vertex pool with fixed
// ordered ends. Vertices are first compressed to local indices so the
// visited set fits a 64-bit mask.
struct SpanSearch {
    const Hypergraph& g;
    int k;
    std::vector<int> pool;           // sorted global ids, |pool| <= 64
    std::vector<int> local_of;       // global -> local or -1
    std::vector<int> target_window;  // global ids, ordered
    uint64_t budget;
    uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<int> seq;  // global ids

    explicit SpanSearch(const Hypergraph& gr) : g(gr), k(gr.k()) {}

    bool dfs(uint64_t visited) {
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        if (seq.size() == pool.size()) {
            return std::equal(seq.end() - (k - 1), seq.end(), target_window.begin(),
                              target_window.end());
        }
        std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
        for (int v : g.codegree_set(win)) {
            int lv = local_of[v];
            if (lv < 0 || (visited >> lv) & 1) continue;
            seq.push_back(v);
            if (dfs(visited | (1ULL << lv))) return true;
            seq.pop_back();
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

std::optional<TightPath> find_spanning_path(const Hypergraph& g, std::span<const int> vertices,
                                            std::span<const int> head, std::span<const int> tail,
                                            uint64_t node_budget, bool* budget_hit) {
    int k = g.k();
    if (budget_hit) *budget_hit = false;
    if (vertices.size() > 64) throw cap_exceeded("find_spanning_path: pool larger than 64");
    SpanSearch s(g);
    s.pool.assign(vertices.begin(), vertices.end());
    std::sort(s.pool.begin(), s.pool.end());
    s.local_of.assign(g.n(), -1);
    for (size_t i = 0; i < s.pool.size(); ++i) s.local_of[s.pool[i]] = static_cast<int>(i);
    s.target_window.assign(tail.begin(), tail.end());
    s.budget = node_budget;
    for (int v : head)
        if (s.local_of.at(v) < 0) return std::nullopt;
    for (int v : tail)
        if (s.local_of.at(v) < 0) return std::nullopt;
    if (vertices.size() < static_cast<size_t>(k - 1)) return std::nullopt;
    s.seq.assign(head.begin(), head.end());
    uint64_t visited = 0;
    for (int v : head) visited |= 1ULL << s.local_of[v];
    if (vertices.size() == static_cast<size_t>(k - 1)) {
        // degenerate: the bare tuple must be both ends
        if (std::equal(head.begin(), head.end(), tail.begin(), tail.end()))
            return TightPath{s.seq};
        return std::nullopt;
    }
    bool found = s.dfs(visited);
    if (budget_hit) *budget_hit = s.budget_hit;
    if (!found) return std::nullopt;
    return TightPath{s.seq};
}

ReservoirVerifyResult verify_reservoir(const Hypergraph& g, const ReservoirPath& p,
                                       const ReservoirVerifyMode& mode) {
    int k = g.k();
    ReservoirVerifyResult res;
    const auto& base = p.base.seq;
    if (!is_tight_path(g, base)) return res;
    std::vector<int> head = p.base.head_tuple(k), tail = p.base.tail_tuple(k);
    for (int v : p.reservoir) {
        for (int e : head)
            if (e == v) throw invalid_input("verify_reservoir: reservoir meets end tuple");
        for (int e : tail)
            if (e == v) throw invalid_input("verify_reservoir: reservoir meets end tuple");
    }
    size_t r = p.reservoir.size();
    if (mode.exhaustive && static_cast<int>(r) > mode.exhaustive_cap)
        throw cap_exceeded("verify_reservoir: exhaustive cap exceeded");

    enum class Verdict { Found, Absent, Budget };
    auto check_subset = [&](const std::vector<int>& skipped) -> Verdict {
        std::vector<int> pool;
        std::set<int> skip(skipped.begin(), skipped.end());
        for (int v : base)
            if (!skip.count(v)) pool.push_back(v);
        // cached or decomposition-derived witness first
        std::optional<TightPath> w;
        auto it = p.skip_witnesses.find(skipped);
        if (it != p.skip_witnesses.end()) w = it->second;
        if (!w) w = p.witness_from_decomposition(skipped);
        if (w) {
            std::vector<int> sorted_pool = pool;
            std::sort(sorted_pool.begin(), sorted_pool.end());
            std::vector<int> sorted_w = w->seq;
            std::sort(sorted_w.begin(), sorted_w.end());
            if (sorted_w == sorted_pool && w->head_tuple(k) == head && w->tail_tuple(k) == tail &&
                is_tight_path(g, w->seq)) {
                res.witnesses[skipped] = *w;
                return Verdict::Found;
            }
        }
        bool hit = false;
        auto found = find_spanning_path(g, pool, head, tail, mode.search_node_budget, &hit);
        if (found) {
            res.witnesses[skipped] = *found;
            return Verdict::Found;
        }
        return hit ? Verdict::Budget : Verdict::Absent;
    };

    auto run_subset = [&](std::vector<int> skipped) -> bool {
        ++res.subsets_checked;
        switch (check_subset(skipped)) {
            case Verdict::Found:
                return true;
            case Verdict::Absent:
                res.counterexample = std::move(skipped);
                return false;
            case Verdict::Budget:
                res.budget_exhausted = true;
                return false;
        }
        return false;
    };

    if (mode.exhaustive) {
        for (uint64_t m = 0; m < (1ULL << r); ++m) {
            std::vector<int> skipped;
            for (size_t i = 0; i < r; ++i)
                if ((m >> i) & 1) skipped.push_back(p.reservoir[i]);
            if (!run_subset(std::move(skipped))) return res;
        }
    } else {
        Rng rng(mode.sample_seed);
        for (int t = 0; t < mode.sample_count; ++t) {
            std::vector<int> skipped;
            for (size_t i = 0; i < r; ++i)
                if (rng.next_u64() & 1) skipped.push_back(p.reservoir[i]);
            if (!run_subset(std::move(skipped))) return res;
        }
    }
    res.ok = true;
    return res;
}

}  // namespace trl
