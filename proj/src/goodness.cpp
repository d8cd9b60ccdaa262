#include "trl/goodness.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace trl {

uint64_t set_digest(std::span<const int> sorted_set) {
    uint64_t h = 0x2545f4914f6cdd1dULL ^ (sorted_set.size() * 0x9e3779b97f4a7c15ULL);
    for (int v : sorted_set) h = splitmix64(h ^ static_cast<uint64_t>(v + 1));
    return h;
}

GoodnessOracle::GoodnessOracle(const Hypergraph& g, GoodnessParams gp) : g_(g), gp_(gp) {
    if (gp.eps <= 0) throw invalid_input("GoodnessParams: eps must be > 0");
    if (gp.p <= 0 || gp.p > 1) throw invalid_input("GoodnessParams: p must be in (0,1]");
    if (gp.ell < 1) throw invalid_input("GoodnessParams: ell must be >= 1");
}

bool GoodnessOracle::level1(std::span<const int> x, const std::vector<int>& s) const {
    // degree of x into S; s in x contributes nothing (x+{s} is not a k-set)
    long long deg = 0;
    const auto& compl_set = g_.codegree_set(x);
    // both sorted: count intersection
    size_t i = 0, j = 0;
    while (i < compl_set.size() && j < s.size()) {
        if (compl_set[i] < s[j]) {
            ++i;
        } else if (compl_set[i] > s[j]) {
            ++j;
        } else {
            ++deg;
            ++i;
            ++j;
        }
    }
    double target = gp_.p * static_cast<double>(s.size());
    double slack = gp_.eps * gp_.p * static_cast<double>(g_.n());
    return std::abs(static_cast<double>(deg) - target) <= slack + 1e-12;
}

bool GoodnessOracle::eval(std::span<const int> x, const std::vector<int>& s, uint64_t s_digest,
                          int ell) {
    std::vector<int> xs(x.begin(), x.end());
    std::sort(xs.begin(), xs.end());
    uint64_t xrank = subset_rank(xs);
    auto& level_memo = memo_[Key{s_digest, ell}];
    if (auto it = level_memo.find(xrank); it != level_memo.end()) return it->second;
    bool ok;
    if (ell == 1) {
        ok = level1(xs, s);
    } else {
        ok = eval(xs, s, s_digest, ell - 1);
        if (ok) {
            long long bad_edges = 0;
            std::vector<int> sub(g_.k() - 1);
            for (int v : g_.codegree_set(xs)) {
                // the edge is xs + {v}; scan its (k-1)-subsets for a bad one
                std::vector<int> edge = xs;
                edge.insert(std::lower_bound(edge.begin(), edge.end(), v), v);
                bool has_bad = false;
                for (int omit = 0; omit < g_.k() && !has_bad; ++omit) {
                    int idx = 0;
                    for (int i = 0; i < g_.k(); ++i)
                        if (i != omit) sub[idx++] = edge[i];
                    if (sub == xs) continue;
                    if (!eval(sub, s, s_digest, ell - 1)) has_bad = true;
                }
                if (has_bad) ++bad_edges;
            }
            double slack = gp_.eps * gp_.p * static_cast<double>(g_.n());
            ok = static_cast<double>(bad_edges) <= slack + 1e-12;
        }
    }
    // monotonicity: an l-good entry must be (l-1)-good
    if (ell >= 2 && ok) assert(eval(xs, s, s_digest, ell - 1));
    memo_[Key{s_digest, ell}][xrank] = ok;
    return ok;
}

bool GoodnessOracle::is_good(std::span<const int> x, const std::vector<int>& s, int ell) {
    if (static_cast<int>(x.size()) != g_.k() - 1) throw invalid_input("is_good: |x| != k-1");
    std::vector<int> ss = s;
    std::sort(ss.begin(), ss.end());
    return eval(x, ss, set_digest(ss), ell);
}

long long GoodnessOracle::count_nongood(const std::vector<int>& s) {
    std::vector<int> ss = s;
    std::sort(ss.begin(), ss.end());
    uint64_t digest = set_digest(ss);
    int n = g_.n(), r = g_.k() - 1;
    // enumerate candidate sets up front so the loop parallelizes
    std::vector<std::vector<int>> candidates;
    for_each_subset(n, r, [&](std::span<const int> sub) {
        for (int v : sub)
            if (std::binary_search(ss.begin(), ss.end(), v)) return;
        candidates.emplace_back(sub.begin(), sub.end());
    });
    // warm the memo serially: parallel lookups below are then read-only
    for (int l = 1; l <= gp_.ell; ++l)
        for (const auto& c : candidates) eval(c, ss, digest, l);
    long long bad = 0;
    const auto& level_memo = memo_[Key{digest, gp_.ell}];
#pragma omp parallel for reduction(+ : bad) num_threads(thread_budget()) schedule(static)
    for (size_t i = 0; i < candidates.size(); ++i) {
        uint64_t xrank = subset_rank(candidates[i]);
        if (!level_memo.at(xrank)) ++bad;
    }
    return bad;
}

namespace {
// memo-free recomputation, the reference oracle
bool good_nomemo(const Hypergraph& g, const GoodnessParams& gp, std::span<const int> x,
                 const std::vector<int>& s, int ell) {
    GoodnessOracle fresh(g, gp);
    return fresh.is_good(x, s, ell);
}
}  // namespace

long long GoodnessOracle::count_nongood_serial(const std::vector<int>& s) const {
    std::vector<int> ss = s;
    std::sort(ss.begin(), ss.end());
    long long bad = 0;
    for_each_subset(g_.n(), g_.k() - 1, [&](std::span<const int> sub) {
        for (int v : sub)
            if (std::binary_search(ss.begin(), ss.end(), v)) return;
        if (!good_nomemo(g_, gp_, sub, ss, gp_.ell)) ++bad;
    });
    return bad;
}

bool is_good(const Hypergraph& g, std::span<const int> x, const std::vector<int>& s,
             const GoodnessParams& gp) {
    GoodnessOracle o(g, gp);
    return o.is_good(x, s, gp.ell);
}

long long count_nongood(const Hypergraph& g, const std::vector<int>& s,
                        const GoodnessParams& gp) {
    GoodnessOracle o(g, gp);
    return o.count_nongood(s);
}

}  // namespace trl
