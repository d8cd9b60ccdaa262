#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "trl/hypergraph.hpp"

namespace trl {

// Ordered vertex structures. A path "from x to y" stores the sequence
// beginning x_1..x_{k-1} and ending y_1..y_{k-1} read left-to-right; callers
// wanting the reversed end apply reverse() explicitly.
struct TightPath {
    std::vector<int> seq;

    std::vector<int> head_tuple(int k) const;  // first k-1 vertices
    std::vector<int> tail_tuple(int k) const;  // last k-1 vertices
    TightPath reversed() const;
    // number of edges, i.e. |seq| - (k-1)
    int length(int k) const { return static_cast<int>(seq.size()) - (k - 1); }
};

struct TightCycle {
    std::vector<int> cyc;
};

struct SpikePath {
    std::vector<std::vector<int>> spikes;  // t pairwise-disjoint ordered (k-1)-tuples
};

// seq distinct, length >= k-1; true iff every k-window is an edge.
// A bare (k-1)-tuple is a degenerate tight path.
bool is_tight_path(const Hypergraph& g, std::span<const int> seq);

// cyc must be a permutation of all vertices; requires n >= k+1.
bool is_tight_cycle(const Hypergraph& g, std::span<const int> cyc);

bool is_spike_path(const Hypergraph& g, const SpikePath& sp);

// One absorber: two tight paths with identical end tuples, one on all the
// vertices and one on all but u.
struct AbsorberGadget {
    int u = -1;
    TightPath path_with;
    TightPath path_without;

    std::vector<int> vertices() const;  // all vertices incl. u
    bool valid(const Hypergraph& g) const;
};

struct ReservoirPath {
    TightPath base;
    std::vector<int> reservoir;  // sorted subset of interior vertices

    // Optional construction-time decomposition: the gadget interiors sit at
    // known ranges of base.seq and share their surrounding (k-1)-tuples with
    // the skip variant, so a witness for any subset is a range splice.
    struct GadgetSplice {
        int u = -1;
        size_t begin = 0, end = 0;          // interior range [begin,end) in base.seq
        std::vector<int> without_interior;  // replacement interior omitting u
    };
    struct Decomposition {
        int k = 0;
        std::vector<GadgetSplice> splices;  // ascending begin
    };
    std::optional<Decomposition> decomposition;

    // Cached tight paths indexed by skipped subsets (sorted vertex lists).
    std::map<std::vector<int>, TightPath> skip_witnesses;

    std::vector<int> ends_head(int k) const { return base.head_tuple(k); }
    std::vector<int> ends_tail(int k) const { return base.tail_tuple(k); }

    // Assembles the tight path skipping skipped (subset of reservoir) from the
    // decomposition; nullopt when no decomposition is cached.
    std::optional<TightPath> witness_from_decomposition(std::span<const int> skipped) const;
};

struct ReservoirVerifyMode {
    bool exhaustive = true;
    int sample_count = 0;       // used when exhaustive is false
    uint64_t sample_seed = 0;
    int exhaustive_cap = 16;    // refuse exhaustive checks with |R| above this
    uint64_t search_node_budget = 50'000'000;
};

struct ReservoirVerifyResult {
    bool ok = false;
    bool budget_exhausted = false;
    size_t subsets_checked = 0;
    // failing subset when ok is false and the search completed
    std::optional<std::vector<int>> counterexample;
    std::map<std::vector<int>, TightPath> witnesses;
};

// Checks the reservoir property: for every R' (all 2^|R| subsets in
// exhaustive mode, seeded samples otherwise) there is a tight path on
// V(base)\R' with the base's end tuples, searched within V(base). The search
// is exhaustive within the gadget's vertex set, so with an intact node budget
// a negative verdict is a proof of absence.
ReservoirVerifyResult verify_reservoir(const Hypergraph& g, const ReservoirPath& p,
                                       const ReservoirVerifyMode& mode);

// Exhaustive search for a tight path with vertex set exactly `vertices`,
// starting with head and ending with tail (both ordered (k-1)-tuples drawn
// from `vertices`). Used by verify_reservoir and tests.
std::optional<TightPath> find_spanning_path(const Hypergraph& g, std::span<const int> vertices,
                                            std::span<const int> head, std::span<const int> tail,
                                            uint64_t node_budget, bool* budget_hit = nullptr);

}  // namespace trl
