#pragma once

#include <optional>
#include <vector>

#include "trl/hypergraph.hpp"

namespace trl {

struct DpOptions {
    int vertex_cap = 14;            // refuse larger instances
    size_t memory_cap_bytes = 1ULL << 31;  // state-table budget
};

struct DpResult {
    bool exists = false;
    std::vector<int> cycle;  // canonical witness when exists
};

// Exact decision for "G contains a tight Hamilton cycle", by dynamic
// programming over (visited subset, ordered last (k-1)-window). The start is
// canonicalized at vertex 0 with the lexicographically least initial window
// among rotations/reflections; closing transitions check the k-1 wrap
// windows.
DpResult exact_tight_ham(const Hypergraph& g, const DpOptions& opts = {});

}  // namespace trl
