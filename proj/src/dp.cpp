#include "trl/dp.hpp"

#include <algorithm>
#include <cmath>

namespace trl {

namespace {

// windows encoded as base-n digit strings, first vertex most significant
struct WindowCode {
    int n, w;  // w = k-1
    size_t size;
    explicit WindowCode(int n_, int w_) : n(n_), w(w_) {
        size = 1;
        for (int i = 0; i < w; ++i) size *= static_cast<size_t>(n);
    }
    size_t encode(std::span<const int> win) const {
        size_t c = 0;
        for (int v : win) c = c * n + static_cast<size_t>(v);
        return c;
    }
    void decode(size_t code, std::vector<int>& out) const {
        out.assign(w, 0);
        for (int i = w - 1; i >= 0; --i) {
            out[i] = static_cast<int>(code % n);
            code /= n;
        }
    }
};

}  // namespace

DpResult exact_tight_ham(const Hypergraph& g, const DpOptions& opts) {
    int k = g.k(), n = g.n();
    if (n <= k) throw degenerate_instance("exact_tight_ham: requires n >= k+1");
    if (n > opts.vertex_cap) throw cap_exceeded("exact_tight_ham: n above vertex cap");
    WindowCode wc(n, k - 1);
    size_t masks = 1ULL << n;
    if (masks * wc.size / 8 > opts.memory_cap_bytes)
        throw cap_exceeded("exact_tight_ham: state table above memory cap");
    if (g.num_edges() == 0) return {};

    // dp[mask * wc.size + window]: is there a tight path visiting exactly
    // mask, ending in window, starting with the seed window?
    std::vector<bool> dp(masks * wc.size);
    std::vector<int> win(k - 1), nwin(k - 1), wrap(k);

    // seed windows: ordered (k-1)-tuples starting at vertex 0
    std::vector<std::vector<int>> seeds;
    {
        std::vector<int> tup(k - 1);
        tup[0] = 0;
        std::vector<bool> used(n, false);
        used[0] = true;
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == k - 1) {
                seeds.push_back(tup);
                return;
            }
            for (int v = 1; v < n; ++v) {
                if (used[v]) continue;
                used[v] = true;
                tup[pos] = v;
                self(self, pos + 1);
                used[v] = false;
            }
        };
        rec(rec, 1);
    }
    std::sort(seeds.begin(), seeds.end());

    uint32_t full = static_cast<uint32_t>(masks - 1);
    for (const auto& seed : seeds) {
        std::fill(dp.begin(), dp.end(), false);
        uint32_t mask0 = 0;
        for (int v : seed) mask0 |= 1u << v;
        dp[static_cast<size_t>(mask0) * wc.size + wc.encode(seed)] = true;

        // iterate masks in increasing popcount order implicitly: masks grow
        // numerically as bits are added, so a plain ascending sweep works
        for (uint32_t mask = mask0; mask <= full; ++mask) {
            if ((mask & mask0) != mask0) continue;
            size_t base = static_cast<size_t>(mask) * wc.size;
            for (size_t code = 0; code < wc.size; ++code) {
                if (!dp[base + code]) continue;
                wc.decode(code, win);
                for (int u : g.codegree_set(win)) {
                    if ((mask >> u) & 1) continue;
                    for (int i = 0; i + 1 < k - 1; ++i) nwin[i] = win[i + 1];
                    nwin[k - 2] = u;
                    dp[(static_cast<size_t>(mask | (1u << u))) * wc.size + wc.encode(nwin)] =
                        true;
                }
            }
        }

        // accept: full mask, final window W, all wrap windows closed
        size_t base = static_cast<size_t>(full) * wc.size;
        for (size_t code = 0; code < wc.size; ++code) {
            if (!dp[base + code]) continue;
            wc.decode(code, win);
            // reflection canonicalization: second vertex < last vertex
            if (!(seed[1 % (k - 1)] < win[k - 2]) && k >= 3) continue;
            bool ok = true;
            for (int j = 0; j + 1 <= k - 1 && ok; ++j) {
                // window (c_{n-k+1+j}..c_{n-1}, c_0..c_j)
                int idx = 0;
                for (int i = j; i <= k - 2; ++i) wrap[idx++] = win[i];
                for (int i = 0; i <= j; ++i) wrap[idx++] = seed[i];
                if (!g.has_edge(wrap)) ok = false;
            }
            if (!ok) continue;
            // reconstruct by walking the table backwards
            DpResult res;
            res.exists = true;
            std::vector<int> order;  // reversed tail after the seed
            uint32_t mask = full;
            std::vector<int> cur = win;
            while (mask != mask0) {
                int last = cur[k - 2];
                order.push_back(last);
                uint32_t pmask = mask & ~(1u << last);
                bool stepped = false;
                // previous window = (v, cur[0..k-3]) for some visited v
                for (int v = 0; v < n && !stepped; ++v) {
                    if (!((pmask >> v) & 1)) continue;
                    std::vector<int> prev(k - 1);
                    prev[0] = v;
                    for (int i = 0; i + 1 < k - 1; ++i) prev[i + 1] = cur[i];
                    std::vector<int> edge(prev);
                    edge.push_back(last);
                    if (!g.has_edge(edge)) continue;
                    if (dp[static_cast<size_t>(pmask) * wc.size + wc.encode(prev)]) {
                        cur = prev;
                        mask = pmask;
                        stepped = true;
                    }
                }
                if (!stepped) {
                    // cur must be the seed with mask0 remaining digits
                    break;
                }
            }
            res.cycle = seed;
            // cur == seed here; append the recorded tail in forward order
            for (auto it = order.rbegin(); it != order.rend(); ++it) res.cycle.push_back(*it);
            return res;
        }
    }
    return {};
}

}  // namespace trl
