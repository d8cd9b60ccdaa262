#include <algorithm>
#include <unordered_map>

#include "trl/pipeline.hpp"

namespace trl {

namespace {

// positional window code, base n
inline uint64_t wcode(std::span<const int> w, int n) {
    uint64_t c = 0;
    for (int v : w) c = c * n + static_cast<uint64_t>(v);
    return c;
}

struct ConnectSearch {
    const Hypergraph& g;
    int k, n;
    std::vector<bool> allowed;       // interior candidates
    std::vector<int> y_suffix;       // y_{k-1},...,y_1: forced final appends
    std::unordered_map<uint64_t, int> dist;  // admissible backward distances
    uint64_t nodes = 0, cap = 0;
    bool budget_hit = false;
    std::vector<int> seq;
    int max_len = 0;

    // backward BFS from the target window over a superset of legal vertices
    void fill_dist(std::span<const int> target, const std::vector<bool>& bfs_allowed) {
        std::vector<std::vector<int>> frontier{std::vector<int>(target.begin(), target.end())};
        dist[wcode(target, n)] = 0;
        for (int d = 1; d <= max_len && !frontier.empty(); ++d) {
            std::vector<std::vector<int>> next;
            for (const auto& w : frontier) {
                // predecessors: (v, w[0..k-3]) with edge {v} + set(w)
                for (int v : g.codegree_set(w)) {
                    if (!bfs_allowed[v]) continue;
                    std::vector<int> pw(k - 1);
                    pw[0] = v;
                    for (int i = 0; i + 1 < k - 1; ++i) pw[i + 1] = w[i];
                    uint64_t c = wcode(pw, n);
                    if (dist.emplace(c, d).second) next.push_back(std::move(pw));
                }
            }
            frontier = std::move(next);
        }
    }

    bool dfs(int depth_left, int suffix_progress) {
        if (++nodes > cap) {
            budget_hit = true;
            return false;
        }
        if (suffix_progress == k - 1) return true;
        if (depth_left == 0) return false;
        std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
        auto it = dist.find(wcode(win, n));
        if (it == dist.end() || it->second > depth_left) return false;
        for (int v : g.codegree_set(win)) {
            bool is_next_suffix =
                suffix_progress < k - 1 && v == y_suffix[suffix_progress];
            if (suffix_progress > 0 && !is_next_suffix) continue;  // suffix is contiguous
            if (!is_next_suffix && !allowed[v]) continue;
            seq.push_back(v);
            if (!is_next_suffix) allowed[v] = false;
            bool found = dfs(depth_left - 1, is_next_suffix ? suffix_progress + 1 : 0);
            if (!is_next_suffix) allowed[v] = true;
            if (found) return true;
            seq.pop_back();
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

ConnectOutcome connect(const Hypergraph& g, std::span<const int> x, std::span<const int> y,
                       const std::vector<int>& s, const std::vector<int>& s2, int max_len,
                       uint64_t node_cap) {
    int k = g.k(), n = g.n();
    if (static_cast<int>(x.size()) != k - 1 || static_cast<int>(y.size()) != k - 1)
        throw invalid_input("connect: end tuples must have k-1 vertices");
    for (int xv : x)
        for (int yv : y)
            if (xv == yv) throw invalid_input("connect: end tuples must be disjoint");
    ConnectOutcome out;
    ConnectSearch cs{g, k, n};
    cs.allowed.assign(n, true);
    for (int v : s) cs.allowed[v] = false;
    for (int v : s2) cs.allowed[v] = false;
    for (int v : x) cs.allowed[v] = false;
    for (int v : y) cs.allowed[v] = false;
    cs.cap = node_cap;
    cs.max_len = max_len;
    // target window: reverse-read of y
    std::vector<int> target(y.rbegin(), y.rend());
    cs.y_suffix.assign(target.begin(), target.end());
    std::vector<bool> bfs_allowed = cs.allowed;
    for (int v : x) bfs_allowed[v] = true;
    for (int v : y) bfs_allowed[v] = true;
    cs.fill_dist(target, bfs_allowed);

    uint64_t start_code = wcode(x, n);
    auto it = cs.dist.find(start_code);
    int start_depth = (it != cs.dist.end()) ? it->second : 1;
    // the y suffix costs k-1 appends on top of any interior vertices
    start_depth = std::max(start_depth, k - 1);
    for (int limit = start_depth; limit <= max_len; ++limit) {
        cs.seq.assign(x.begin(), x.end());
        if (cs.dfs(limit, 0)) {
            out.path = TightPath{cs.seq};
            out.nodes = cs.nodes;
            return out;
        }
        if (cs.budget_hit) break;
    }
    out.budget_exhausted = cs.budget_hit;
    out.nodes = cs.nodes;
    return out;
}

}  // namespace trl
