#pragma once

#include <vector>

#include "trl/hypergraph.hpp"

namespace trl {

// All k-sets of {0..n-1} whose (k-1)-subsets admit an injective labelling
// with subset labelled i lying in families[i]. Families are given as lists of
// sorted (k-1)-sets; decided per candidate k-set by bipartite matching.
std::vector<std::vector<int>> rainbow_ksets(const std::vector<std::vector<std::vector<int>>>& families,
                                            int n);

struct UpperRegReport {
    double lhs = 0;  // |E(G) cap K_k(E_1..E_k)|
    double rhs = 0;  // p|K_k| + p*eta*n^k
    bool ok = false;
};

// Single-witness check of the upper-regularity inequality.
UpperRegReport upper_reg_check(const Hypergraph& g, double p, double eta,
                               const std::vector<std::vector<std::vector<int>>>& witnesses);

struct UpperRegSampleReport {
    int violations = 0;
    int samples = 0;
    double worst_margin = 0;  // max over samples of lhs - rhs (negative = slack)
    UpperRegReport worst;
};

// Seeded sampler over random witness families; a clean pass means "no
// violation found among the sampled witnesses", never a proof.
UpperRegSampleReport upper_reg_sample(const Hypergraph& g, double p, double eta, int num_samples,
                                      uint64_t seed);

}  // namespace trl
