#include "trl/util.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <mutex>

namespace trl {

namespace {
constexpr int kMaxN = 200;
constexpr int kMaxR = 9;
constexpr uint64_t kSat = UINT64_MAX / 4;

const uint64_t* binom_table() {
    static uint64_t tab[kMaxN + 1][kMaxR + 1];
    static std::once_flag once;
    std::call_once(once, [] {
        for (int n = 0; n <= kMaxN; ++n) {
            for (int r = 0; r <= kMaxR; ++r) {
                if (r == 0) {
                    tab[n][r] = 1;
                } else if (n == 0) {
                    tab[n][r] = 0;
                } else {
                    uint64_t v = tab[n - 1][r - 1] + tab[n - 1][r];
                    tab[n][r] = std::min(v, kSat);
                }
            }
        }
    });
    return &tab[0][0];
}
}  // namespace

uint64_t binom(int n, int r) {
    if (r < 0 || n < 0) return 0;
    if (r > n) return 0;
    if (r > kMaxR || n > kMaxN) throw invalid_input("binom: out of table range");
    return binom_table()[n * (kMaxR + 1) + r];
}

uint64_t subset_rank(std::span<const int> s) {
    uint64_t r = 0;
    for (size_t i = 0; i < s.size(); ++i) r += binom(s[i], static_cast<int>(i) + 1);
    return r;
}

void subset_unrank(uint64_t rank, int n, int r, std::vector<int>& out) {
    out.assign(r, 0);
    int hi = n;
    for (int i = r; i >= 1; --i) {
        int a = i - 1;
        while (a + 1 < hi && binom(a + 1, i) <= rank) ++a;
        out[i - 1] = a;
        rank -= binom(a, i);
        hi = a;
    }
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t x = splitmix64(base ^ 0x51ed2701a2b9c4d3ULL);
    x = splitmix64(x ^ a);
    x = splitmix64(x ^ b);
    x = splitmix64(x ^ c);
    return x;
}

Rng::Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : s_) {
        x = splitmix64(x);
        s = x;
    }
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

uint64_t Rng::next_u64() {
    // xoshiro256**
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

uint64_t Rng::next_below(uint64_t m) {
    if (m == 0) throw invalid_input("next_below(0)");
    uint64_t lim = UINT64_MAX - UINT64_MAX % m;
    uint64_t x;
    do {
        x = next_u64();
    } while (x >= lim);
    return x % m;
}

int thread_budget() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("TRL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::string join_ints(std::span<const int> xs, char sep) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out.push_back(sep);
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace trl
