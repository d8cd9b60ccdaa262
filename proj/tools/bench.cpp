// Benchmark: OpenMP kernels against their serial reference implementations.
// Usage: trl_bench [n]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <map>
#include <vector>

#include "trl/goodness.hpp"
#include "trl/multicomplex.hpp"
#include "trl/partitions.hpp"
#include "trl/randmodel.hpp"
#include "trl/regfamily.hpp"

using namespace trl;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Multicomplex complete_mc(int t) {
    Multicomplex m;
    m.set_num_vertices(t);
    std::map<std::vector<int>, int> ids;
    for (int u = 1; u <= 3; ++u) {
        for_each_subset(t, u, [&](std::span<const int> s) {
            std::vector<int> vs(s.begin(), s.end());
            std::vector<int> bd;
            if (u >= 2) {
                std::vector<int> sub(u - 1);
                for (int omit = 0; omit < u; ++omit) {
                    int idx = 0;
                    for (int i = 0; i < u; ++i)
                        if (i != omit) sub[idx++] = vs[i];
                    bd.push_back(ids.at(sub));
                }
            }
            ids[vs] = m.add_edge(vs, bd);
        });
    }
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 36;
    std::printf("threads: %d (TRL_THREADS caps this)\n\n", thread_budget());
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

    {
        Hypergraph g = sample_gnp({n, 3, 0.4, 1});
        GoodnessParams gp{0.25, 0.4, 2};
        std::vector<int> s;
        for (int v = 0; v < n / 3; ++v) s.push_back(v);
        long long a = 0, b = 0;
        GoodnessOracle par(g, gp);
        double tp = time_ms([&] { a = par.count_nongood(s); });
        GoodnessOracle ser(g, gp);
        double ts = time_ms([&] { b = ser.count_nongood_serial(s); });
        std::printf("%-28s %12.2f %12.2f %7.2fx   (counts %lld == %lld)\n",
                    "count_nongood [vs memo-free]", ts, tp, ts / tp, b, a);
    }
    {
        auto f = random_family(n - n % 3, 3, 3, 2, 2);
        std::vector<Hypergraph> gs{sample_gnp({n - n % 3, 3, 0.5, 3})};
        double ea = 0, eb = 0;
        double tp = time_ms([&] { ea = energy(f, gs); });
        double ts = time_ms([&] { eb = energy_serial(f, gs); });
        std::printf("%-28s %12.2f %12.2f %7.2fx   (energy %.6f == %.6f)\n", "energy", ts, tp,
                    ts / tp, eb, ea);
    }
    {
        auto m = complete_mc(7);
        bool a = false, b = false;
        double tp = time_ms([&] { a = is_tightly_linked(m); });
        double ts = time_ms([&] { b = is_tightly_linked_serial(m); });
        std::printf("%-28s %12.2f %12.2f %7.2fx   (linked %d == %d)\n", "is_tightly_linked",
                    ts, tp, ts / tp, b, a);
    }
    return 0;
}
