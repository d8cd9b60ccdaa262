#pragma once

#include <set>
#include <string>
#include <vector>

#include "trl/goodness.hpp"
#include "trl/hypergraph.hpp"
#include "trl/paths.hpp"

namespace trl {

struct RootedCensus {
    std::vector<int> root;
    int ell = 0;
    long long path_count = 0;
    std::set<std::vector<int>> end_tuples;  // ordered final (k-1)-windows
    bool truncated = false;
    // one witnessing path per end tuple (first found in DFS order)
    std::map<std::vector<int>, std::vector<int>> witness;
};

inline constexpr long long kDefaultCensusCap = 1'000'000;

// Depth-first enumeration of tight paths extending the ordered root tuple x
// by ell new vertices, avoiding `forbidden` (root vertices are always
// excluded from reuse). Stops with truncated=true once cap paths were
// counted; truncated censuses must not feed exact assertions.
RootedCensus rooted_census(const Hypergraph& g, std::span<const int> x, int ell,
                           const std::vector<int>& forbidden, long long cap = kDefaultCensusCap);

// The spike-path analogue: t new spikes beyond the root spike x; the census
// counts completed spike sequences, end tuple = last spike.
RootedCensus rooted_spike_census(const Hypergraph& g, std::span<const int> x, int t,
                                 const std::vector<int>& forbidden,
                                 long long cap = kDefaultCensusCap);

struct DlCensus {
    int ell = 0;
    // counts[j] = unordered pairs of distinct rooted paths with common root
    // and common end tuple sharing exactly j internal vertices
    std::vector<long long> counts;
    bool truncated = false;

    long long total() const {
        long long s = 0;
        for (long long c : counts) s += c;
        return s;
    }
};

// Pairs up distinct tight paths rooted at x with ell+(k-1) vertices that share
// their end tuple; j counts the internal vertices (outside root and end
// tuple) common to both paths. Requires ell > k-1.
DlCensus dl_census(const Hypergraph& g, std::span<const int> x, int ell,
                   long long cap = kDefaultCensusCap);

// The discrete Jensen inequality every census must satisfy:
//   sum_q C(m_q,2) >= path_count^2/(2|Q|) - path_count/2.
// Returns true when it holds; inputs from a rooted_census.
bool census_jensen_holds(const RootedCensus& c,
                         const std::map<std::vector<int>, long long>& per_end_counts);

// {root, ell, path_count, end_tuple_count, truncated}
std::string census_json(const RootedCensus& c);

struct ExtensionPolicy {
    bool sample = false;   // false: enumerate all surviving branches
    int sample_count = 0;  // branches to follow when sampling
    uint64_t seed = 0;
    long long cap = kDefaultCensusCap;
};

// Greedy good extension: step i picks x_i outside S, S', and the previous
// vertices with the new window an edge, and (except at the last step) the new
// (k-1)-window (eps,p,ell-(i-k+1))-good for S. Returns the realized paths;
// a branch with no admissible extension dies silently.
std::vector<TightPath> greedy_good_extension(const Hypergraph& g, std::span<const int> x, int ell,
                                             const std::vector<int>& s, const std::vector<int>& s2,
                                             const GoodnessParams& gp,
                                             const ExtensionPolicy& policy);

}  // namespace trl
