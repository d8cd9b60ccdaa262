#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trl {

// Binomial coefficients, saturating at UINT64_MAX/4 to keep sums safe.
uint64_t binom(int n, int r);

// Colex rank of a sorted r-subset of {0..n-1}: sum of binom(a_i, i+1).
// Injective for fixed r; used as a hash-map key for subsets.
uint64_t subset_rank(std::span<const int> sorted_set);

// Visits all sorted r-subsets of {0..n-1} in colex order (ties match
// subset_rank order). f is called with a span that is only valid during
// the call.
template <class F>
void for_each_subset(int n, int r, F&& f) {
    if (r < 0 || r > n) return;
    if (r == 0) {
        f(std::span<const int>{});
        return;
    }
    std::vector<int> c(r);
    for (int i = 0; i < r; ++i) c[i] = i;
    while (true) {
        f(std::span<const int>(c.data(), c.size()));
        // colex successor: bump the lowest index that can move
        int i = 0;
        while (i < r) {
            int limit = (i + 1 < r) ? c[i + 1] : n;
            if (c[i] + 1 < limit) break;
            ++i;
        }
        if (i == r) break;
        ++c[i];
        for (int j = 0; j < i; ++j) c[j] = j;
    }
}

// Inverse of subset_rank for fixed r: writes the sorted r-subset of
// {0..n-1} with the given colex rank.
void subset_unrank(uint64_t rank, int n, int r, std::vector<int>& out);

// Ranged variant of for_each_subset: visits the subsets with colex ranks in
// [lo, hi), in order. Lets parallel callers split the enumeration.
template <class F>
void for_each_subset_range(int n, int r, uint64_t lo, uint64_t hi, F&& f) {
    if (r < 0 || r > n || lo >= hi) return;
    std::vector<int> c;
    subset_unrank(lo, n, r, c);
    for (uint64_t rank = lo; rank < hi; ++rank) {
        f(std::span<const int>(c.data(), c.size()));
        int i = 0;
        while (i < r) {
            int limit = (i + 1 < r) ? c[i + 1] : n;
            if (c[i] + 1 < limit) break;
            ++i;
        }
        if (i == r) break;
        ++c[i];
        for (int j = 0; j < i; ++j) c[j] = j;
    }
}

// SplitMix64, used to derive independent substreams from a base seed.
uint64_t splitmix64(uint64_t x);
uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0);

// Deterministic RNG. Wraps a fixed xoshiro-style generator so samples are
// identical across platforms and standard-library versions.
class Rng {
  public:
    explicit Rng(uint64_t seed);
    uint64_t next_u64();
    // uniform in [0,1), 53-bit resolution
    double next_double();
    // uniform in {0..m-1}, rejection sampled
    uint64_t next_below(uint64_t m);
    // Fisher-Yates shuffle
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    uint64_t s_[4];
};

// Thread budget for OpenMP kernels: min(omp_get_max_threads(), $TRL_THREADS).
int thread_budget();

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct degenerate_instance : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string join_ints(std::span<const int> xs, char sep = ' ');

}  // namespace trl
