#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "trl/hypergraph.hpp"

namespace trl {

struct GoodnessParams {
    double eps = 0.1;
    double p = 0.5;
    int ell = 1;
};

// Recursive degree-regularity of (k-1)-sets toward a set S.
// Level 1: |{s in S : x+{s} in E}| = p|S| +- eps*p*n.
// Level l>=2: level l-1 holds, and at most eps*p*n edges containing x also
// contain some (k-1)-set that fails level l-1.
// Memoized per (digest(S), level); the memo asserts the l => l-1 monotonicity
// on every entry it fills.
class GoodnessOracle {
  public:
    GoodnessOracle(const Hypergraph& g, GoodnessParams gp);

    bool is_good(std::span<const int> x, const std::vector<int>& s_sorted, int ell);

    // Number of (k-1)-sets disjoint from S that fail level gp.ell.
    // OpenMP-parallel; the serial reference recomputes every set without the
    // memo and is kept for testing.
    long long count_nongood(const std::vector<int>& s_sorted);
    long long count_nongood_serial(const std::vector<int>& s_sorted) const;

    const GoodnessParams& params() const { return gp_; }

  private:
    const Hypergraph& g_;
    GoodnessParams gp_;

    struct Key {
        uint64_t digest;
        int ell;
        bool operator==(const Key& o) const { return digest == o.digest && ell == o.ell; }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            return splitmix64(k.digest ^ (static_cast<uint64_t>(k.ell) << 32));
        }
    };
    // per (S,ell): map from x-rank to verdict
    std::unordered_map<Key, std::unordered_map<uint64_t, bool>, KeyHash> memo_;

    bool eval(std::span<const int> x, const std::vector<int>& s_sorted, uint64_t s_digest,
              int ell);
    bool level1(std::span<const int> x, const std::vector<int>& s_sorted) const;
};

// Free-function forms matching the operation signatures.
bool is_good(const Hypergraph& g, std::span<const int> x, const std::vector<int>& s,
             const GoodnessParams& gp);
long long count_nongood(const Hypergraph& g, const std::vector<int>& s, const GoodnessParams& gp);

uint64_t set_digest(std::span<const int> sorted_set);

}  // namespace trl
