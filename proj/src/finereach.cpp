#include "trl/finereach.hpp"

#include <algorithm>
#include <set>

namespace trl {

FineReachResult fine_reach(const FineReachInput& in) {
    int k = in.k;
    const auto& pc = in.layers;
    if (pc.num_parts() != 2 * k - 2) throw invalid_input("fine_reach: need 2k-2 parts");

    // bucket top edges by window start and validate arity/support
    std::vector<std::vector<std::vector<int>>> window_edges(k - 1);
    for (auto e : in.top_edges) {
        if (static_cast<int>(e.size()) != k) throw invalid_input("fine_reach: top edge arity");
        std::sort(e.begin(), e.end());
        std::vector<int> cls;
        for (int v : e) cls.push_back(pc.part_of(v));
        std::sort(cls.begin(), cls.end());
        for (size_t i = 1; i < cls.size(); ++i)
            if (cls[i] != cls[i - 1] + 1)
                throw invalid_input("fine_reach: top edge not on consecutive parts");
        int start = cls.front();
        if (start < 0 || start > k - 2)
            throw invalid_input("fine_reach: top edge window out of range");
        // support: every (k-1)-subset present one layer down
        std::vector<int> sub(k - 1);
        for (int omit = 0; omit < k; ++omit) {
            int idx = 0;
            for (int i = 0; i < k; ++i)
                if (i != omit) sub[idx++] = e[i];
            if (!pc.has_edge(sub)) throw invalid_input("fine_reach: top edge unsupported");
        }
        window_edges[start].push_back(e);
    }

    FineReachResult out;
    out.reach.resize(k);
    {
        std::set<std::vector<int>> r0;
        for (auto e : in.r0) {
            std::sort(e.begin(), e.end());
            if (!pc.has_edge(e)) throw invalid_input("fine_reach: R_0 member not a layer edge");
            for (int v : e)
                if (pc.part_of(v) > k - 2)
                    throw invalid_input("fine_reach: R_0 member off X_0..X_{k-2}");
            r0.insert(e);
        }
        out.reach[0].assign(r0.begin(), r0.end());
    }

    for (int j = 1; j <= k - 1; ++j) {
        std::set<std::vector<int>> prev(out.reach[j - 1].begin(), out.reach[j - 1].end());
        std::set<std::vector<int>> next;
        for (const auto& e : window_edges[j - 1]) {
            // previous window = e minus its X_{j+k-2} vertex; next = e minus X_{j-1}
            std::vector<int> prev_tuple, next_tuple;
            for (int v : e) {
                if (pc.part_of(v) != j - 1 + k - 1) prev_tuple.push_back(v);
                if (pc.part_of(v) != j - 1) next_tuple.push_back(v);
            }
            if (prev.count(prev_tuple)) next.insert(next_tuple);
        }
        out.reach[j].assign(next.begin(), next.end());
    }
    return out;
}

}  // namespace trl
