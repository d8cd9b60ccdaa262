#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trl/hypergraph.hpp"
#include "trl/multicomplex.hpp"
#include "trl/partitions.hpp"

namespace trl {

struct EquitabilityReport {
    bool equal_clusters = false;
    bool cluster_count_ok = false;  // t_0 <= t <= t_1
    bool cell_counts_ok = false;    // <= t_1 cells per Cross_j
    bool regular_ok = false;        // sampled J(Q) complexes pass the probes
    std::vector<double> density_vector;  // inferred d_j, 1/d_j integral
    int sampled_q = 0;
    int violations = 0;
    bool ok() const { return equal_clusters && cluster_count_ok && cell_counts_ok && regular_ok; }
};

// (t_0,t_1,eps)-equitability: equal clusters with t_0 <= t <= t_1, at most
// t_1 cells per Cross_j, and for sampled Q in Cross_k the complex J(Q) passes
// per-layer regularity probes against a common density vector with 1/d_j
// integral. Sampling makes (c) an estimate, never a proof.
EquitabilityReport is_equitable_family(const FamilyOfPartitions& f, int t0, int t1, double eps,
                                       int sample_q, int witnesses_per_layer, uint64_t seed);

// --- reduced multicomplex ----------------------------------------------------

enum class RemovalCause { kIrregular, kLowDegree, kLostSupport };

struct ReducedComplexResult {
    Multicomplex complex;
    std::map<int, RemovalCause> removed;  // edge id -> cause
    std::string report_json() const;
};

// Iteratively removes k-edges outside `regular_kedges` and lower edges whose
// coboundary degree falls below the (1 - 2^{i+2} eps_k^{1/k}) t prod d_j^{-C(i,j-1)}
// thresholds, cascading support losses, to the unique fixed point. Ties at
// the threshold count as satisfying.
ReducedComplexResult reduced_multicomplex(const Multicomplex& m,
                                          const std::vector<int>& regular_kedges,
                                          const std::vector<double>& densities /* d_2..d_k-1 */,
                                          double eps_k, int t);

// --- polyad classification ---------------------------------------------------

struct PolyadStats {
    std::vector<int> signature;       // constituent coarse cell ids
    bool coarse_violation = false;    // a probe found (eps_k,p)-irregularity
    double fine_irregular_fraction = 0;
    double fine_density_dev_fraction = 0;
};

enum class PolyadCause { kRegular, kCoarseIrregular, kFineIrregular, kFineDensity };

struct PolyadClassification {
    std::vector<std::pair<std::vector<int>, PolyadCause>> labels;
    long long irregular_count = 0;
    double fewirreg_bound = 0;  // 4 eps_k C(t,k) prod d_i^{-C(k,i)}
    bool within_bound = false;
};

PolyadClassification classify_irregular_polyads(const std::vector<PolyadStats>& stats,
                                                double eps_k,
                                                const std::vector<double>& densities, int t,
                                                int k);

// --- strengthened pair -------------------------------------------------------

struct StrengthenedPairParams {
    int t0 = 1, t1 = 64, t2 = 4096;
    double eps_k = 0.25, eps = 0.25, f_k = 0.0625, f = 0.25;
    double p = 1.0;
    int sample_q = 200;
    int witnesses_per_layer = 8;
    uint64_t seed = 0;
};

struct StrengthenedPairReport {
    bool s1_refines = false;
    EquitabilityReport s2_coarse, s4_fine;
    double s3_coarse_irregular_fraction = 1, s5_fine_irregular_fraction = 1;
    bool s3_ok = false, s5_ok = false;
    double s6_disagree_fraction = 1;
    bool s6_ok = false;
    std::string s1_witness;
};

StrengthenedPairReport strengthened_pair_check(const FamilyOfPartitions& coarse,
                                               const FamilyOfPartitions& fine,
                                               const Hypergraph& g,
                                               const StrengthenedPairParams& params);

// --- energy ------------------------------------------------------------------

// binom(n,k)^{-1} sum_i sum_{Q in Cross_k} d_1(G_i | polyad(Q))^2, computed by
// grouping Q by polyad. OpenMP-parallel with a deterministic merge; the
// serial reference is kept for testing.
double energy(const FamilyOfPartitions& f, const std::vector<Hypergraph>& graphs, double p = 1.0);
double energy_serial(const FamilyOfPartitions& f, const std::vector<Hypergraph>& graphs,
                     double p = 1.0);

}  // namespace trl
