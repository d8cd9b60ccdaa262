#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "doctest.h"
#include "trl/finereach.hpp"
#include "trl/partite.hpp"
#include "trl/partitions.hpp"
#include "trl/randmodel.hpp"
#include "trl/regfamily.hpp"

using namespace trl;

namespace {

std::function<bool(std::span<const int>)> membership(const std::set<std::vector<int>>& s) {
    return [&s](std::span<const int> x) {
        return s.count(std::vector<int>(x.begin(), x.end())) > 0;
    };
}

// three parts of size m with binomial bipartite layers of density d
PartiteComplex binomial_tripartite(int m, double d, uint64_t seed) {
    std::vector<std::vector<int>> parts(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < m; ++j) parts[i].push_back(i * m + j);
    PartiteComplex pc(parts, 2);
    Rng rng(seed);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int x : parts[a])
                for (int y : parts[b])
                    if (rng.next_double() < d) pc.add_edge(std::vector<int>{x, y});
    return pc;
}

}  // namespace

TEST_CASE("relative density basics and the zero-support convention") {
    std::vector<std::vector<int>> parts{{0, 1}, {2, 3}};
    std::set<std::vector<int>> below{{0}, {1}, {2}, {3}};
    std::set<std::vector<int>> all_pairs{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(relative_density(parts, membership(all_pairs), membership(below), 1.0) == 1.0);
    std::set<std::vector<int>> none;
    CHECK(relative_density(parts, membership(none), membership(below), 1.0) == 0.0);
    // |K_i(H_{i-1})| = 0: density 0 by convention
    CHECK(relative_density(parts, membership(all_pairs), membership(none), 1.0) == 0.0);
    CHECK_THROWS_AS(relative_density(parts, membership(none), membership(none), 0.0),
                    invalid_input);
}

TEST_CASE("regularity probe: global density witness and planted violation") {
    std::vector<std::vector<int>> parts{{0, 1, 2, 3}, {4, 5, 6, 7}};
    std::vector<std::vector<int>> below;
    for (int v = 0; v < 8; ++v) below.push_back({v});
    // top graph: a planted half: all pairs with first part in {0,1}
    std::set<std::vector<int>> top;
    for (int a = 0; a < 2; ++a)
        for (int b = 4; b < 8; ++b) top.insert({a, b});
    // witness H' = H_{i-1} itself checks only the global density
    std::vector<std::vector<std::vector<int>>> full_witness{below};
    auto rep = regularity_probe(parts, below, membership(top), 0.5, 0.05, 1.0, &full_witness, 0,
                                0);
    CHECK_FALSE(rep.violated);
    CHECK(rep.witnesses_qualifying == 1);
    // the planted sub-polyad {0,1} x {4..7} has density 1 != 0.5
    std::vector<std::vector<std::vector<int>>> planted{{{0}, {1}, {4}, {5}, {6}, {7}}};
    auto rep2 = regularity_probe(parts, below, membership(top), 0.5, 0.05, 1.0, &planted, 0, 0);
    CHECK(rep2.violated);
    CHECK(rep2.worst.deviation > 0.4);
}

TEST_CASE("binomial bipartite layers pass sampled probes in most seeds") {
    int pass = 0, seeds = 100;
    int m = 40;
    for (int s = 0; s < seeds; ++s) {
        std::vector<std::vector<int>> parts(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < m; ++j) parts[i].push_back(i * m + j);
        Rng rng(mix_seed(400, s));
        std::set<std::vector<int>> top;
        for (int x : parts[0])
            for (int y : parts[1])
                if (rng.next_double() < 0.5) top.insert({x, y});
        std::vector<std::vector<int>> below;
        for (int v = 0; v < 2 * m; ++v) below.push_back({v});
        auto rep = regularity_probe(parts, below, membership(top), 0.5, 0.1, 1.0, nullptr, 50,
                                    mix_seed(401, s));
        if (!rep.violated) ++pass;
    }
    CHECK(pass >= 95);
}

TEST_CASE("equitable family checks") {
    // equal random clusters with hierarchical cells pass (a) and (b)
    auto f = random_family(24, 3, 3, 2, 5);
    auto rep = is_equitable_family(f, 2, 8, 0.45, 30, 6, 17);
    CHECK(rep.equal_clusters);
    CHECK(rep.cluster_count_ok);
    CHECK(rep.cell_counts_ok);
    CHECK(rep.density_vector[2] == doctest::Approx(0.5));

    // unequal clusters fail (a)
    std::vector<int> lopsided(10, 0);
    for (int v = 6; v < 10; ++v) lopsided[v] = 1;
    FamilyOfPartitions bad(10, 3, lopsided);
    auto rep2 = is_equitable_family(bad, 1, 8, 0.3, 5, 3, 1);
    CHECK_FALSE(rep2.equal_clusters);

    // k=2 family: no cells, (c) vacuous
    std::vector<int> halves(10);
    for (int v = 0; v < 10; ++v) halves[v] = v % 2;
    FamilyOfPartitions f2(10, 2, halves);
    auto rep3 = is_equitable_family(f2, 1, 4, 0.3, 5, 3, 1);
    CHECK(rep3.equal_clusters);
    CHECK(rep3.cell_counts_ok);
    CHECK(rep3.regular_ok);
}

TEST_CASE("family validation and refinement") {
    std::vector<int> clusters(12);
    for (int v = 0; v < 12; ++v) clusters[v] = v / 4;
    FamilyOfPartitions f(12, 3, clusters);
    for_each_subset(12, 2, [&](std::span<const int> s) {
        if (f.is_crossing(s)) f.assign_cell(s, 0);
    });
    CHECK_FALSE(f.validate().has_value());
    auto fine = refine_family(f, 2, 3);
    CHECK_FALSE(fine.validate().has_value());
    CHECK(fine.refines(f));
    CHECK_FALSE(f.refines(fine));
}

TEST_CASE("family JSON round trip") {
    auto f = random_family(18, 3, 3, 2, 21);
    auto text = f.to_json();
    auto g = FamilyOfPartitions::from_json(text);
    CHECK(g.num_clusters() == f.num_clusters());
    std::vector<std::vector<int>> crossing;
    for_each_subset(18, 2, [&](std::span<const int> s) {
        if (f.is_crossing(s)) crossing.emplace_back(s.begin(), s.end());
    });
    for (size_t i = 0; i < crossing.size(); i += 7) {
        for (size_t j = 0; j < crossing.size(); j += 11) {
            bool same_f = f.cell_of(crossing[i]) == f.cell_of(crossing[j]);
            bool same_g = g.cell_of(crossing[i]) == g.cell_of(crossing[j]);
            CHECK(same_f == same_g);
        }
    }
}

namespace {

// a small multicomplex: t 1-edges, one 2-cell per pair (d_2 = 1), and one
// 3-edge per supported triple
struct TestComplex {
    Multicomplex m;
    std::map<std::vector<int>, int> id2;
    std::vector<int> kids;
};

TestComplex simple_complex(int t) {
    TestComplex tc;
    tc.m.set_num_vertices(t);
    std::vector<int> ones;
    for (int v = 0; v < t; ++v) ones.push_back(tc.m.add_edge({v}));
    for_each_subset(t, 2, [&](std::span<const int> s) {
        tc.id2[{s[0], s[1]}] = tc.m.add_edge({s[0], s[1]}, {ones[s[0]], ones[s[1]]});
    });
    for_each_subset(t, 3, [&](std::span<const int> s) {
        std::vector<int> bd{tc.id2[{s[0], s[1]}], tc.id2[{s[0], s[2]}], tc.id2[{s[1], s[2]}]};
        tc.kids.push_back(tc.m.add_edge({s[0], s[1], s[2]}, bd));
    });
    return tc;
}

}  // namespace

TEST_CASE("reduced multicomplex identity when everything clears the floors") {
    // with d_2 = 1 the 2-edge floor is about (1-16 eps^{1/3}) t; pick eps_k
    // so the floor sits at 3 < t-2 = 4
    int t = 6;
    auto tc = simple_complex(t);
    std::vector<double> densities{0, 0, 1.0};
    double eps_k = std::pow((1.0 - 3.0 / 6) / 16, 3);
    auto full = reduced_multicomplex(tc.m, tc.kids, densities, eps_k, t);
    CHECK(full.removed.empty());
    auto again = reduced_multicomplex(full.complex, tc.kids, densities, eps_k, t);
    CHECK(again.removed.empty());
}

TEST_CASE("reduced multicomplex: ties satisfy, one irregular edge cascades") {
    // put the 2-edge floor exactly at 4 = every pair's 3-degree
    double eps_k = std::pow(1.0 / 48, 3);
    int t = 6;
    auto tc = simple_complex(t);
    std::vector<double> densities{0, 0, 1.0};
    auto keep = reduced_multicomplex(tc.m, tc.kids, densities, eps_k, t);
    CHECK(keep.removed.empty());
    // hand-computed cascade: mark the triple {0,1,2} irregular. Pairs {0,1},
    // {0,2}, {1,2} drop to degree 3 < 4 and die; every triple containing one
    // of them loses support and dies; that drags every remaining pair below
    // the floor, so uniformities 2 and 3 empty out.
    auto res = reduced_multicomplex(tc.m, {tc.kids.begin() + 1, tc.kids.end()}, densities,
                                    eps_k, t);
    CHECK(res.complex.edges_of_uniformity(3).empty());
    CHECK(res.complex.edges_of_uniformity(2).empty());
    CHECK(res.removed.count(tc.kids.front()) == 1);
    auto json = res.report_json();
    CHECK(json.find("irregular") != std::string::npos);
    CHECK(json.find("low_degree") != std::string::npos);
}

TEST_CASE("idempotence of the reduction on seeded random instances") {
    for (int seed = 0; seed < 50; ++seed) {
        Rng rng(mix_seed(999, seed));
        int t = 5 + static_cast<int>(rng.next_below(3));
        auto tc = simple_complex(t);
        std::vector<int> regular;
        for (int id : tc.kids)
            if (rng.next_double() < 0.8) regular.push_back(id);
        std::vector<double> densities{0, 0, 1.0};
        double eps_k = 0.0005 + 0.002 * rng.next_double();
        auto once = reduced_multicomplex(tc.m, regular, densities, eps_k, t);
        auto twice = reduced_multicomplex(once.complex, regular, densities, eps_k, t);
        CHECK(twice.removed.empty());
        // the output is a submulticomplex: boundaries of live edges live
        for (size_t id = 1; id < once.complex.num_edge_records(); ++id) {
            if (!once.complex.alive(static_cast<int>(id))) continue;
            for (int b : once.complex.edge(static_cast<int>(id)).boundary)
                CHECK(once.complex.alive(b));
        }
    }
}

TEST_CASE("polyad classification and the irregular-count bound") {
    std::vector<PolyadStats> stats;
    stats.push_back({{0, 1, 2}, false, 0.0, 0.0});
    stats.push_back({{0, 1, 3}, true, 0.0, 0.0});
    stats.push_back({{0, 2, 3}, false, 0.5, 0.0});
    stats.push_back({{1, 2, 3}, false, 0.0, 0.5});
    std::vector<double> densities{0, 0, 0.5};
    auto cl = classify_irregular_polyads(stats, 0.25, densities, 4, 3);
    CHECK(cl.labels[0].second == PolyadCause::kRegular);
    CHECK(cl.labels[1].second == PolyadCause::kCoarseIrregular);
    CHECK(cl.labels[2].second == PolyadCause::kFineIrregular);
    CHECK(cl.labels[3].second == PolyadCause::kFineDensity);
    CHECK(cl.irregular_count == 3);
    // bound: 4 * 0.25 * C(4,3) * 0.5^{-C(3,2)} = 4 * 8 = 32
    CHECK(cl.fewirreg_bound == doctest::Approx(32.0));
    CHECK(cl.within_bound);
}

TEST_CASE("strengthened pair: refinement and the trivial S6 case") {
    Hypergraph g = sample_gnp({24, 3, 0.5, 31});
    auto f = random_family(24, 3, 3, 2, 5);
    StrengthenedPairParams prm;
    prm.t0 = 2;
    prm.t1 = 8;
    prm.t2 = 16;
    prm.eps_k = 0.5;
    prm.eps = 0.45;
    prm.f_k = 0.45;
    prm.f = 0.45;
    prm.p = 0.5;
    prm.sample_q = 40;
    prm.witnesses_per_layer = 4;
    prm.seed = 3;
    // F_f = F_c: S1 and S6 trivially pass
    auto rep = strengthened_pair_check(f, f, g, prm);
    CHECK(rep.s1_refines);
    CHECK(rep.s6_disagree_fraction == 0.0);
    CHECK(rep.s6_ok);

    // a family that does not refine f
    auto other = random_family(24, 3, 3, 2, 6);
    auto rep2 = strengthened_pair_check(f, other, g, prm);
    CHECK_FALSE(rep2.s1_refines);
    CHECK_FALSE(rep2.s1_witness.empty());

    // a genuine refinement keeps S1
    auto fine = refine_family(f, 2, 9);
    auto rep3 = strengthened_pair_check(f, fine, g, prm);
    CHECK(rep3.s1_refines);
}

TEST_CASE("energy: complete and empty graphs, ceiling") {
    int n = 18;
    auto f = random_family(n, 3, 3, 2, 7);
    Hypergraph complete = Hypergraph::complete(3, n);
    Hypergraph empty(3, n, {});
    long long crossing = 0;
    for_each_subset(n, 3, [&](std::span<const int> s) {
        if (f.is_crossing(s)) ++crossing;
    });
    double e = energy(f, {complete});
    CHECK(e == doctest::Approx(static_cast<double>(crossing) / binom(n, 3)));
    CHECK(energy(f, {empty}) == 0.0);
    CHECK(e <= 1.0 + 1e-12);
    CHECK(energy(f, {complete, empty}) == doctest::Approx(e));
}

TEST_CASE("energy never decreases under refinement (100 seeded triples)") {
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng(mix_seed(2024, seed));
        int t = 2 + static_cast<int>(rng.next_below(2));
        int n = t * (6 + static_cast<int>(rng.next_below(5)));
        auto f = random_family(n, 3, t, 1 + static_cast<int>(rng.next_below(2)),
                               mix_seed(1, seed));
        auto fine = refine_family(f, 2, mix_seed(2, seed));
        Hypergraph g = sample_gnp({n, 3, 0.3 + 0.4 * rng.next_double(), mix_seed(3, seed)});
        double ec = energy(f, {g});
        double ef = energy(fine, {g});
        CHECK(ef >= ec - 1e-12);
        CHECK(ec <= 1.0 + 1e-12);
        CHECK(energy_serial(f, {g}) == doctest::Approx(ec));
    }
}

TEST_CASE("count_complex_copies basics") {
    auto host = binomial_tripartite(6, 1.0, 1);  // complete bipartite layers
    PatternComplex vertex;
    vertex.num_vertices = 1;
    vertex.host_part = {0};
    CHECK(count_complex_copies(host, vertex) == 6);
    std::vector<std::vector<int>> restr{{0, 1}, {}, {}};
    CHECK(count_complex_copies(host, vertex, &restr) == 2);

    PatternComplex triangle;
    triangle.num_vertices = 3;
    triangle.host_part = {0, 1, 2};
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    CHECK(count_complex_copies(host, triangle) == 6 * 6 * 6);
    PatternComplex big;
    big.num_vertices = 9;
    big.host_part = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    CHECK_THROWS_AS(count_complex_copies(host, big), cap_exceeded);
}

TEST_CASE("triangle counts track the dense-counting target on binomial hosts") {
    int m = 40, hits = 0;
    double d = 0.5;
    double target = std::pow(m, 3) * std::pow(d, 3);
    PatternComplex triangle;
    triangle.num_vertices = 3;
    triangle.host_part = {0, 1, 2};
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    for (int seed = 0; seed < 100; ++seed) {
        auto host = binomial_tripartite(m, d, mix_seed(555, seed));
        double count = static_cast<double>(count_complex_copies(host, triangle));
        if (std::abs(count - target) <= 0.10 * target) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("degree census matches per-tuple brute force") {
    auto host = binomial_tripartite(8, 0.6, 99);
    auto dc = degree_census(host, nullptr, 0.5);
    std::vector<long long> expect;
    for (int x : host.parts()[0]) {
        for (int y : host.parts()[1]) {
            std::vector<int> pair{x, y};
            if (!host.is_clique(pair)) continue;
            long long ext = 0;
            for (int z : host.parts()[2]) {
                std::vector<int> tri{x, y, z};
                if (host.is_clique(tri)) ++ext;
            }
            expect.push_back(ext);
        }
    }
    std::sort(expect.begin(), expect.end());
    auto got = dc.extensions;
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
    CHECK(dc.tuples == static_cast<long long>(expect.size()));
}

TEST_CASE("degree census corner cases") {
    auto host = binomial_tripartite(5, 1.0, 4);
    auto dc = degree_census(host, nullptr, 0.1);
    for (long long e : dc.extensions) CHECK(e == 5);
    CHECK(dc.fraction_within == doctest::Approx(1.0));

    // complete pairs on (V1,V2), nothing to V3: all extensions zero
    std::vector<std::vector<int>> parts(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) parts[i].push_back(i * 4 + j);
    PartiteComplex sparse(parts, 2);
    for (int x : parts[0])
        for (int y : parts[1]) sparse.add_edge(std::vector<int>{x, y});
    auto dc2 = degree_census(sparse, nullptr, 0.1);
    CHECK(dc2.tuples == 16);
    for (long long e : dc2.extensions) CHECK(e == 0);
}

TEST_CASE("mdl_count: complete case, empty B, and the filter oracle") {
    auto host = binomial_tripartite(5, 1.0, 8);
    std::vector<std::vector<int>> a_edges, b_edges, c_edges;
    for (int x : host.parts()[0])
        for (int y : host.parts()[1]) a_edges.push_back({x, y});
    for (int y : host.parts()[1])
        for (int z : host.parts()[2]) b_edges.push_back({y, z});
    for (int y : host.parts()[1]) c_edges.push_back({y});
    CHECK(mdl_count(host, a_edges, b_edges, c_edges, 2, 2, 1) == 125);
    CHECK(mdl_count(host, a_edges, {}, c_edges, 2, 2, 1) == 0);
    CHECK_THROWS_AS(mdl_count(host, a_edges, b_edges, c_edges, 2, 2, 2), invalid_input);

    // random instance vs unconstrained count filtered post hoc
    auto rnd = binomial_tripartite(6, 0.55, 77);
    std::vector<std::vector<int>> ra, rb, rc;
    Rng rng(31);
    for (int x : rnd.parts()[0])
        for (int y : rnd.parts()[1]) {
            std::vector<int> e{x, y};
            if (rnd.has_edge(e) && rng.next_double() < 0.7) ra.push_back(e);
        }
    for (int y : rnd.parts()[1]) rc.push_back({y});
    for (int y : rnd.parts()[1])
        for (int z : rnd.parts()[2]) {
            std::vector<int> e{y, z};
            if (rnd.has_edge(e) && rng.next_double() < 0.7) rb.push_back(e);
        }
    long long got = mdl_count(rnd, ra, rb, rc, 2, 2, 1);
    std::set<std::vector<int>> aset(ra.begin(), ra.end()), bset(rb.begin(), rb.end());
    long long expect = 0;
    for (int x : rnd.parts()[0])
        for (int y : rnd.parts()[1])
            for (int z : rnd.parts()[2]) {
                std::vector<int> tri{x, y, z};
                if (!rnd.is_clique(tri)) continue;
                if (aset.count({x, y}) && bset.count({y, z})) ++expect;
            }
    CHECK(got == expect);
}

namespace {

FineReachInput random_chain(int m, uint64_t seed, double d2 = 0.7, double d3 = 0.6) {
    std::vector<std::vector<int>> parts(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < m; ++j) parts[i].push_back(i * m + j);
    PartiteComplex layers(parts, 2);
    Rng rng(seed);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int x : parts[a])
                for (int y : parts[b])
                    if (rng.next_double() < d2) layers.add_edge(std::vector<int>{x, y});
    FineReachInput in(3, layers);
    for (int w = 0; w <= 1; ++w) {
        for (int x : parts[w])
            for (int y : parts[w + 1])
                for (int z : parts[w + 2]) {
                    std::vector<int> tri{x, y, z};
                    if (!in.layers.is_clique(tri)) continue;
                    if (rng.next_double() < d3) in.top_edges.push_back(tri);
                }
    }
    for (int x : parts[0])
        for (int y : parts[1]) {
            std::vector<int> e{x, y};
            if (in.layers.has_edge(e) && rng.next_double() < 0.5) in.r0.push_back(e);
        }
    return in;
}

}  // namespace

TEST_CASE("fine_reach equals explicit path enumeration on 50 seeded chains") {
    for (int seed = 0; seed < 50; ++seed) {
        auto in = random_chain(6, mix_seed(808, seed));
        auto out = fine_reach(in);
        std::set<std::vector<int>> r0(in.r0.begin(), in.r0.end());
        std::set<std::vector<int>> top;
        for (auto e : in.top_edges) {
            std::sort(e.begin(), e.end());
            top.insert(e);
        }
        std::set<std::vector<int>> expect;
        const auto& parts = in.layers.parts();
        for (int a : parts[0])
            for (int b : parts[1])
                for (int c : parts[2])
                    for (int d : parts[3]) {
                        if (!r0.count({a, b})) continue;
                        if (!top.count({a, b, c})) continue;
                        if (!top.count({b, c, d})) continue;
                        expect.insert({c, d});
                    }
        std::set<std::vector<int>> got(out.final().begin(), out.final().end());
        CHECK(got == expect);
    }
}

TEST_CASE("fine_reach is monotone in R_0 and empty on empty input") {
    auto in = random_chain(6, 414);
    auto full = fine_reach(in);
    FineReachInput small = in;
    small.r0.resize(in.r0.size() / 2);
    auto part = fine_reach(small);
    std::set<std::vector<int>> big(full.final().begin(), full.final().end());
    for (const auto& e : part.final()) CHECK(big.count(e) == 1);
    FineReachInput none = in;
    none.r0.clear();
    CHECK(fine_reach(none).final().empty());
}

TEST_CASE("fine_reach rejects malformed inputs") {
    auto in = random_chain(4, 515);
    FineReachInput bad = in;
    bad.top_edges.push_back({0, 1, 2});  // inside part 0: not partite
    CHECK_THROWS_AS(fine_reach(bad), invalid_input);
}
