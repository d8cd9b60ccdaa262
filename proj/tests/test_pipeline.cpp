#include <cmath>
#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "trl/dp.hpp"
#include "trl/pipeline.hpp"
#include "trl/randmodel.hpp"

using namespace trl;

namespace {

// exhaustive BFS oracle over (window, visited) states; returns the minimal
// number of appended vertices to realize a path from x to rev-read(y), or -1
int connect_bfs_oracle(const Hypergraph& g, std::vector<int> x, std::vector<int> y,
                       const std::set<int>& avoid) {
    int k = g.k();
    std::vector<int> target(y.rbegin(), y.rend());
    struct State {
        std::vector<int> win;
        uint32_t visited;
        int depth;
    };
    auto key = [&](const std::vector<int>& w, uint32_t vis) {
        uint64_t c = vis;
        for (int v : w) c = c * 64 + static_cast<uint64_t>(v + 1);
        return c;
    };
    uint32_t vis0 = 0;
    for (int v : x) vis0 |= 1u << v;
    std::queue<State> q;
    q.push({x, vis0, 0});
    std::set<uint64_t> seen{key(x, vis0)};
    std::set<int> yset(y.begin(), y.end());
    while (!q.empty()) {
        auto st = q.front();
        q.pop();
        if (std::equal(st.win.begin(), st.win.end(), target.begin(), target.end()))
            return st.depth;
        for (int v : g.codegree_set(st.win)) {
            if ((st.visited >> v) & 1) continue;
            bool interior_ok = !avoid.count(v) && !yset.count(v);
            bool suffix_ok = yset.count(v);
            if (!interior_ok && !suffix_ok) continue;
            std::vector<int> nwin(st.win.begin() + 1, st.win.end());
            nwin.push_back(v);
            uint64_t kk = key(nwin, st.visited | (1u << v));
            if (seen.insert(kk).second) q.push({nwin, st.visited | (1u << v), st.depth + 1});
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("connect finds a direct extension at depth k-1") {
    // path 0 1 2 3: x = (0,1), y reading toward the join = (3,2)
    Hypergraph g(3, 6, {{0, 1, 2}, {1, 2, 3}});
    auto res = connect(g, std::vector<int>{0, 1}, std::vector<int>{3, 2}, {}, {}, 6);
    REQUIRE(res.path.has_value());
    CHECK(res.path->seq == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("connect from an isolated tuple is absent") {
    Hypergraph g(3, 8, {{4, 5, 6}});
    auto res = connect(g, std::vector<int>{0, 1}, std::vector<int>{4, 5}, {}, {}, 8);
    CHECK_FALSE(res.path.has_value());
    CHECK_FALSE(res.budget_exhausted);
}

TEST_CASE("connect on K_9 matches the BFS-distance oracle and stays short") {
    Hypergraph k9 = Hypergraph::complete(3, 9);
    int pairs = 0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 4; b < 7; ++b) {
            std::vector<int> x{a, (a + 1) % 3 == a ? a + 1 : (a + 1) % 3};
            x = {a, 3};
            std::vector<int> y{b, 7};
            auto res = connect(k9, x, y, {}, {}, 10);
            REQUIRE(res.path.has_value());
            CHECK(is_tight_path(k9, res.path->seq));
            int len = static_cast<int>(res.path->seq.size()) - 2;
            int oracle = connect_bfs_oracle(k9, x, y, {});
            CHECK(len == oracle);
            CHECK(len <= 2 * (3 - 1) + 1);
            ++pairs;
        }
    }
    CHECK(pairs == 9);
}

TEST_CASE("connect equals the oracle on sparse instances with avoid sets") {
    for (int seed = 0; seed < 15; ++seed) {
        Hypergraph g = sample_gnp({11, 3, 0.35, mix_seed(31, seed)});
        std::vector<int> x{0, 1}, y{2, 3};
        std::vector<int> s{4};
        auto res = connect(g, x, y, s, {}, 8);
        int oracle = connect_bfs_oracle(g, x, y, {4});
        if (res.path) {
            CHECK(is_tight_path(g, res.path->seq));
            CHECK(static_cast<int>(res.path->seq.size()) - 2 == oracle);
            for (size_t i = 2; i + 2 < res.path->seq.size(); ++i)
                CHECK(res.path->seq[i] != 4);
        } else {
            CHECK((oracle == -1 || oracle > 8));
        }
    }
}

TEST_CASE("direct absorber on the complete graph and on an isolated vertex") {
    Hypergraph k7 = Hypergraph::complete(3, 7);
    PipelineConfig cfg;
    auto res = build_absorber(k7, 3, {}, cfg);
    REQUIRE(res.gadget.has_value());
    CHECK(res.gadget->valid(k7));
    CHECK(res.gadget->u == 3);
    CHECK(res.gadget->path_with.seq.size() == 5);

    Hypergraph sparse(3, 7, {{1, 2, 4}});
    auto res2 = build_absorber(sparse, 0, {}, cfg);
    CHECK_FALSE(res2.gadget.has_value());
}

TEST_CASE("direct absorbers are found for most vertices of thinned instances") {
    int found = 0, tried = 0;
    for (int seed = 0; seed < 5; ++seed) {
        Hypergraph g = sample_gnp({60, 3, 0.3, mix_seed(606, seed)});
        CodegreeFloorRepair fr{0.3, static_cast<int>(std::ceil(0.6 * 0.3 * 60))};
        g = apply_adversary(g, fr, mix_seed(607, seed)).graph;
        PipelineConfig cfg;
        for (int u = 0; u < 60; u += 15) {
            ++tried;
            if (build_absorber(g, u, {}, cfg).gadget) ++found;
        }
    }
    CHECK(found >= tried * 95 / 100);
}

TEST_CASE("spiked absorber realizes the two-spike-path gadget") {
    Hypergraph k13 = Hypergraph::complete(3, 13);
    PipelineConfig cfg;
    cfg.spiked_absorber = true;
    cfg.spiked_t = 2;
    auto res = build_absorber(k13, 5, {}, cfg);
    REQUIRE(res.gadget.has_value());
    CHECK(res.gadget->valid(k13));
    // gadget spans 2k-1 + spikes + connectors; both traversals share ends
    CHECK(res.gadget->path_with.seq.size() >= 11);
    auto res_t1 = [&] {
        PipelineConfig c1 = cfg;
        c1.spiked_t = 1;
        return build_absorber(k13, 5, {}, c1);
    }();
    REQUIRE(res_t1.gadget.has_value());
    CHECK(res_t1.gadget->valid(k13));
}

TEST_CASE("build_reservoir_path: degenerate, singleton, and |R|=6 at n=60") {
    Hypergraph k9 = Hypergraph::complete(3, 9);
    PipelineConfig cfg;
    auto empty = build_reservoir_path(k9, {}, {}, cfg);
    REQUIRE(empty.path.has_value());
    CHECK(empty.path->base.seq.size() == 2);
    CHECK(verify_reservoir(k9, *empty.path, {}).ok);

    auto one = build_reservoir_path(k9, {4}, {}, cfg);
    REQUIRE(one.path.has_value());
    auto vr = verify_reservoir(k9, *one.path, {});
    CHECK(vr.ok);
    CHECK(vr.subsets_checked == 2);

    Hypergraph g = sample_gnp({60, 3, 0.3, 505});
    CodegreeFloorRepair fr{0.3, 11};
    g = apply_adversary(g, fr, 506).graph;
    auto six = build_reservoir_path(g, {3, 11, 19, 27, 35, 43}, {}, cfg);
    REQUIRE(six.path.has_value());
    auto vr6 = verify_reservoir(g, *six.path, {});
    CHECK(vr6.ok);
    CHECK(vr6.subsets_checked == 64);
    CHECK(six.vertices_per_reservoir_unit <= 12.0);
}

TEST_CASE("extension covers the complete graph and respects zero quotas") {
    Hypergraph k10 = Hypergraph::complete(3, 10);
    PipelineConfig cfg;
    TightPath p{{0, 1, 2}};
    auto res = extend_almost_spanning(k10, p, {}, nullptr, nullptr, cfg);
    CHECK(res.leftover.empty());
    CHECK(res.path.seq.size() == 10);
    CHECK(is_tight_path(k10, res.path.seq));

    std::vector<int> cluster_of(10, 0);
    std::vector<long long> quota{0};
    auto stuck = extend_almost_spanning(k10, p, {}, &cluster_of, &quota, cfg);
    CHECK(stuck.path.seq == p.seq);
    CHECK(stuck.leftover.size() == 7);
}

TEST_CASE("quota'd extension stays within per-cluster budgets") {
    Hypergraph k12 = Hypergraph::complete(3, 12);
    PipelineConfig cfg;
    std::vector<int> cluster_of(12);
    for (int v = 0; v < 12; ++v) cluster_of[v] = v < 6 ? 0 : 1;
    std::vector<long long> quota{3, 4};
    TightPath p{{0, 6, 1}};
    auto res = extend_almost_spanning(k12, p, {}, &cluster_of, &quota, cfg);
    CHECK(is_tight_path(k12, res.path.seq));
    int used0 = 0, used1 = 0;
    for (int v : res.path.seq) {
        if (v == 0 || v == 6 || v == 1) continue;
        if (cluster_of[v] == 0) ++used0;
        else ++used1;
    }
    CHECK(used0 <= 3);
    CHECK(used1 <= 4);
}

TEST_CASE("find_tight_hamilton on complete graphs") {
    Hypergraph k8 = Hypergraph::complete(3, 8);
    PipelineConfig cfg;
    cfg.seed = 1;
    auto res = find_tight_hamilton(k8, cfg);
    REQUIRE(res.cycle.has_value());
    CHECK(res.verified);
    CHECK(is_tight_cycle(k8, res.cycle->cyc));
}

TEST_CASE("find_tight_hamilton fails structurally on the parity instance") {
    Hypergraph k12 = Hypergraph::complete(3, 12);
    ParityAdversary five{{0, 1, 2, 3, 4}, true};
    Hypergraph g = apply_adversary(k12, five, 0).graph;
    PipelineConfig cfg;
    cfg.seed = 2;
    auto res = find_tight_hamilton(g, cfg);
    CHECK_FALSE(res.cycle.has_value());
    REQUIRE(res.failure.has_value());
    CHECK_FALSE(res.failure->stage.empty());
    CHECK_FALSE(exact_tight_ham(g).exists);
}

TEST_CASE("pipeline success implies the DP verdict at small n") {
    int confirmed = 0;
    for (int seed = 0; seed < 10; ++seed) {
        Hypergraph g = sample_gnp({12, 3, 0.55, mix_seed(17, seed)});
        PipelineConfig cfg;
        cfg.seed = seed;
        auto res = find_tight_hamilton(g, cfg);
        if (res.cycle) {
            CHECK(is_tight_cycle(g, res.cycle->cyc));
            CHECK(exact_tight_ham(g).exists);
            ++confirmed;
        }
    }
    CHECK(confirmed > 0);
}

TEST_CASE("identical config gives identical traces and witnesses") {
    Hypergraph g = sample_gnp({30, 3, 0.4, 404});
    PipelineConfig cfg;
    cfg.seed = 9;
    auto a = find_tight_hamilton(g, cfg);
    auto b = find_tight_hamilton(g, cfg);
    CHECK(a.trace.to_json() == b.trace.to_json());
    REQUIRE(a.cycle.has_value());
    REQUIRE(b.cycle.has_value());
    CHECK(a.cycle->cyc == b.cycle->cyc);
}

TEST_CASE("trace vertex ledger keeps stage sets disjoint") {
    Hypergraph g = sample_gnp({40, 3, 0.5, 123});
    PipelineConfig cfg;
    cfg.seed = 3;
    auto res = find_tight_hamilton(g, cfg);
    REQUIRE(res.cycle.has_value());
    const auto& vs = res.trace.vertex_sets;
    REQUIRE(vs.count("reservoir_base"));
    REQUIRE(vs.count("almost_extension"));
    std::set<int> base(vs.at("reservoir_base").begin(), vs.at("reservoir_base").end());
    for (int v : vs.at("almost_extension")) CHECK(base.count(v) == 0);
    // the reservoir set itself lies inside the base path
    for (int v : vs.at("reservoir_set")) CHECK(base.count(v) == 1);
}

TEST_CASE("exact_tight_ham basics") {
    for (int n = 4; n <= 8; ++n) CHECK(exact_tight_ham(Hypergraph::complete(3, n)).exists);
    // a single spanning tight path cannot close
    Hypergraph path_only(3, 6, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    CHECK_FALSE(exact_tight_ham(path_only).exists);
    Hypergraph k16 = Hypergraph::complete(3, 16);
    CHECK_THROWS_AS(exact_tight_ham(k16), cap_exceeded);
    CHECK_THROWS_AS(exact_tight_ham(Hypergraph::complete(3, 3)), degenerate_instance);
}

TEST_CASE("exact_tight_ham at k=4") {
    CHECK(exact_tight_ham(Hypergraph::complete(4, 6)).exists);
    Hypergraph sparse(4, 6, {{0, 1, 2, 3}, {1, 2, 3, 4}, {2, 3, 4, 5}});
    CHECK_FALSE(exact_tight_ham(sparse).exists);
}

TEST_CASE("DP agrees with pipeline failures on dense-but-obstructed instances") {
    // parity obstruction at n = 12 with |A| = 5: twelve odd windows would
    // have to sum to 3|A| = 15, but twelve odd numbers sum to an even number
    Hypergraph k12 = Hypergraph::complete(3, 12);
    ParityAdversary five{{0, 1, 2, 3, 4}, true};
    Hypergraph g = apply_adversary(k12, five, 0).graph;
    CHECK(g.min_codegree() == 3);
    CHECK_FALSE(exact_tight_ham(g).exists);
}
