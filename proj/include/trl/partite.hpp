#pragma once

#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "trl/util.hpp"

namespace trl {

// s-partite layered complex: parts hold global vertex ids; layers[j] holds
// the sorted-j-set ranks of the j-edges, j = 1..max_arity. Layer 1 defaults
// to all vertices of all parts.
class PartiteComplex {
  public:
    PartiteComplex(std::vector<std::vector<int>> parts, int max_arity);

    int num_parts() const { return static_cast<int>(parts_.size()); }
    int max_arity() const { return max_arity_; }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    int part_of(int v) const { return part_of_.at(v); }

    void add_edge(std::span<const int> xs);  // arity inferred, must be partite
    bool has_edge(std::span<const int> sorted_xs) const;
    long long layer_size(int arity) const;
    const std::unordered_set<uint64_t>& layer(int arity) const { return layers_.at(arity); }

    // every (j-1)-subset of every j-edge present one layer down?
    std::optional<std::string> validate_downclosed() const;

    // all subsets of sizes 2..min(|xs|, max_arity) are edges (layer 1 checked
    // for membership too)
    bool is_clique(std::span<const int> sorted_xs) const;

    std::vector<double> densities;  // optional bookkeeping, one per arity

  private:
    std::vector<std::vector<int>> parts_;
    std::vector<int> part_of_;
    int max_arity_;
    std::vector<std::unordered_set<uint64_t>> layers_;
};

// --- relative p-density -------------------------------------------------

// Supported i-sets of an i-partite (i-1)-graph: one vertex per listed part,
// all (i-1)-subsets edges. `edge` decides membership of a sorted (i-1)-set.
long long count_supported(const std::vector<std::vector<int>>& parts,
                          const std::function<bool(std::span<const int>)>& edge,
                          const std::function<void(std::span<const int>)>& visit = nullptr);

struct DensityCounts {
    long long supported = 0;  // |K_i(H_{i-1})|
    long long in_top = 0;     // |K_i(H_{i-1}) cap H_i|
    double density(double p) const {
        if (supported == 0) return 0.0;  // convention
        return static_cast<double>(in_top) / (p * static_cast<double>(supported));
    }
};

// H_i and H_{i-1} given as membership tests over common parts.
DensityCounts relative_density_counts(const std::vector<std::vector<int>>& parts,
                                      const std::function<bool(std::span<const int>)>& top,
                                      const std::function<bool(std::span<const int>)>& below);

double relative_density(const std::vector<std::vector<int>>& parts,
                        const std::function<bool(std::span<const int>)>& top,
                        const std::function<bool(std::span<const int>)>& below, double p);

// --- regularity probe -----------------------------------------------------

struct RegularityWitness {
    std::vector<std::vector<int>> kept_edges;  // the subgraph H' of H_{i-1}
    double density = 0;
    long long supported = 0;
    double deviation = 0;  // |d_p(G|H') - d|
};

struct RegularityProbeReport {
    bool violated = false;   // conclusive when true
    int witnesses_checked = 0;
    int witnesses_qualifying = 0;  // those with |K(H')| > eps |K(H)|
    RegularityWitness worst;  // largest deviation among qualifying witnesses
};

// Checks d_p(G_i|H') = d +- eps for each witness subgraph H' of H_{i-1} with
// |K_i(H')| > eps |K_i(H_{i-1})|. Witnesses are either the explicit list or
// `samples` seeded random edge-subsets of H_{i-1}. "violated" is conclusive;
// a clean report only means no violation was found.
RegularityProbeReport regularity_probe(
    const std::vector<std::vector<int>>& parts, const std::vector<std::vector<int>>& below_edges,
    const std::function<bool(std::span<const int>)>& top, double d, double eps, double p,
    const std::vector<std::vector<std::vector<int>>>* explicit_witnesses, int samples,
    uint64_t seed);

// --- exact pattern counting ------------------------------------------------

// Pattern complex on q vertices (ids 0..q-1), each assigned to a distinct
// host part; edges listed as sorted vertex-id sets of arity >= 2.
struct PatternComplex {
    int num_vertices = 0;
    std::vector<int> host_part;               // pattern vertex -> host part
    std::vector<std::vector<int>> edges;
};

// Exact backtracking count of embeddings respecting classes and the optional
// per-part restrictions (empty restriction = whole part). Pattern capped at
// 2k vertices.
long long count_complex_copies(const PartiteComplex& host, const PatternComplex& pattern,
                               const std::vector<std::vector<int>>* restrictions = nullptr);

// --- degree census ----------------------------------------------------------

struct DegreeCensus {
    std::vector<long long> extensions;  // one entry per (k-1)-clique found
    long long tuples = 0;
    double target = 0;                   // |V'_k| prod d_i^{C(k-1,i-1)}
    double fraction_within = 0;          // fraction within (1 +- gamma) target
    long long mass_outside = 0;          // total extensions over out-of-band tuples
};

// For every (k-1)-clique across the first k-1 parts (within restrictions),
// counts completions to k-cliques through the last part.
DegreeCensus degree_census(const PartiteComplex& host,
                           const std::vector<std::vector<int>>* restrictions, double gamma);

// --- minimum-degree style counting ------------------------------------------

// Copies of the k-vertex complete (k-1)-complex whose a-face lies in A and
// b-face in B; A, B, C are edge lists on class sets I_A, I_B, I_C = I_A cap
// I_B with |I_A|=a, |I_B|=b, |I_C|=c and a+b-c=k. Every edge of B must
// contain an edge of C.
long long mdl_count(const PartiteComplex& host, const std::vector<std::vector<int>>& a_edges,
                    const std::vector<std::vector<int>>& b_edges,
                    const std::vector<std::vector<int>>& c_edges, int a, int b, int c);

}  // namespace trl
