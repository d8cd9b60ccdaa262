#pragma once

#include <vector>

#include "trl/partite.hpp"

namespace trl {

// Inputs for the layer-by-layer reachability join. Parts are X_0..X_{2k-3};
// lower layers live in `layers` (arities 2..k-1); the top k-graph has edges
// only on k consecutive parts and every edge supported one layer down.
struct FineReachInput {
    int k = 3;
    PartiteComplex layers;  // parts X_0..X_{2k-3}, max arity k-1
    std::vector<std::vector<int>> top_edges;
    std::vector<std::vector<int>> r0;  // (k-1)-edges on X_0..X_{k-2}

    FineReachInput(int k_, PartiteComplex layers_) : k(k_), layers(std::move(layers_)) {}
};

struct FineReachResult {
    // reach[j] = R_j for j = 0..k-1; R_j lives on parts X_j..X_{j+k-2}
    std::vector<std::vector<std::vector<int>>> reach;
    const std::vector<std::vector<int>>& final() const { return reach.back(); }
};

// e is in R_j iff some top edge on X_{j-1}..X_{j+k-2} contains e and an
// element of R_{j-1}; equivalently R_{k-1} collects the end-tuples of tight
// paths with one vertex per part starting in R_0.
FineReachResult fine_reach(const FineReachInput& in);

}  // namespace trl
