#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "trl/expand.hpp"
#include "trl/randmodel.hpp"

using namespace trl;

namespace {

// independent recursive oracle with descending traversal order; returns
// per-end-tuple path counts
void census_oracle_rec(const Hypergraph& g, std::vector<int>& seq, std::vector<bool>& blocked,
                       int left, long long& paths,
                       std::map<std::vector<int>, long long>& ends) {
    int k = g.k();
    if (left == 0) {
        ++paths;
        ++ends[std::vector<int>(seq.end() - (k - 1), seq.end())];
        return;
    }
    std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
    auto cands = g.codegree_set(win);
    for (auto it = cands.rbegin(); it != cands.rend(); ++it) {  // descending
        int v = *it;
        if (blocked[v]) continue;
        blocked[v] = true;
        seq.push_back(v);
        census_oracle_rec(g, seq, blocked, left - 1, paths, ends);
        seq.pop_back();
        blocked[v] = false;
    }
}

std::pair<long long, std::map<std::vector<int>, long long>> census_oracle(
    const Hypergraph& g, std::vector<int> x, int ell, const std::vector<int>& forbidden) {
    std::vector<bool> blocked(g.n(), false);
    for (int v : forbidden) blocked[v] = true;
    for (int v : x) blocked[v] = true;
    long long paths = 0;
    std::map<std::vector<int>, long long> ends;
    census_oracle_rec(g, x, blocked, ell, paths, ends);
    return {paths, ends};
}

}  // namespace

TEST_CASE("rooted_census single extension step") {
    Hypergraph k5 = Hypergraph::complete(3, 5);
    auto c = rooted_census(k5, std::vector<int>{1, 2}, 1, {});
    CHECK(c.path_count == 3);
    CHECK(c.end_tuples.size() == 3);
    CHECK(c.end_tuples.count({2, 0}) == 1);
    CHECK_FALSE(c.truncated);
    // forbidden vertices reduce the count
    auto c2 = rooted_census(k5, std::vector<int>{1, 2}, 1, {0});
    CHECK(c2.path_count == 2);
}

TEST_CASE("rooted_census equals the recursive oracle") {
    Hypergraph g = sample_gnp({9, 3, 0.8, 3});
    for (int ell = 1; ell <= 3; ++ell) {
        auto c = rooted_census(g, std::vector<int>{0, 1}, ell, {});
        auto [paths, ends] = census_oracle(g, {0, 1}, ell, {});
        CHECK(c.path_count == paths);
        CHECK(static_cast<long long>(c.end_tuples.size()) ==
              static_cast<long long>(ends.size()));
        CHECK_FALSE(c.truncated);
        CHECK(census_jensen_holds(c, ends));
    }
}

TEST_CASE("rooted_census cap sets the truncated flag") {
    Hypergraph k9 = Hypergraph::complete(3, 9);
    auto c = rooted_census(k9, std::vector<int>{0, 1}, 3, {}, 10);
    CHECK(c.truncated);
    CHECK(c.path_count == 10);
}

TEST_CASE("end tuples always retain a witnessing path") {
    Hypergraph g = sample_gnp({9, 3, 0.7, 5});
    auto c = rooted_census(g, std::vector<int>{0, 1}, 3, {});
    CHECK(static_cast<long long>(c.end_tuples.size()) <= c.path_count);
    for (const auto& end : c.end_tuples) {
        const auto& w = c.witness.at(end);
        CHECK(is_tight_path(g, w));
        CHECK(std::equal(w.end() - 2, w.end(), end.begin(), end.end()));
    }
}

TEST_CASE("rooted_spike_census counts ordered disjoint extensions") {
    Hypergraph k5 = Hypergraph::complete(3, 5);
    // k=3, one new spike beyond the root: ordered pairs (b1,b2) from the
    // remaining three vertices, all interleave edges present in K_5
    auto c = rooted_spike_census(k5, std::vector<int>{0, 1}, 1, {});
    CHECK(c.path_count == 6);
    CHECK(c.end_tuples.size() == 6);
    Hypergraph empty(3, 5, {});
    CHECK(rooted_spike_census(empty, std::vector<int>{0, 1}, 1, {}).path_count == 0);
}

TEST_CASE("rooted_spike_census equals brute force on a random instance") {
    Hypergraph g = sample_gnp({8, 3, 0.7, 9});
    auto c = rooted_spike_census(g, std::vector<int>{0, 1}, 1, {});
    // brute force over ordered pairs
    long long expect = 0;
    for (int b1 = 0; b1 < 8; ++b1) {
        for (int b2 = 0; b2 < 8; ++b2) {
            if (b1 == b2 || b1 == 0 || b1 == 1 || b2 == 0 || b2 == 1) continue;
            // spikes (0,1),(b1,b2): edges {a2,a1,b1} = {1,0,b1}, {a1,b1,b2} = {0,b1,b2}
            if (g.has_edge(std::vector<int>{1, 0, b1}) &&
                g.has_edge(std::vector<int>{0, b1, b2}))
                ++expect;
        }
    }
    CHECK(c.path_count == expect);
}

TEST_CASE("spike census witnesses are valid spike paths") {
    Hypergraph g = sample_gnp({9, 3, 0.8, 13});
    auto c = rooted_spike_census(g, std::vector<int>{0, 1}, 2, {});
    for (const auto& [end, flat] : c.witness) {
        SpikePath sp;
        for (size_t i = 0; i + 1 < flat.size(); i += 2) sp.spikes.push_back({flat[i], flat[i + 1]});
        CHECK(is_spike_path(g, sp));
    }
}

TEST_CASE("dl_census trivial and planted cases") {
    // a single tight path from x: no pairs at all
    Hypergraph path_only(3, 7, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
    auto d0 = dl_census(path_only, std::vector<int>{0, 1}, 3);
    CHECK(d0.total() == 0);

    // two internally disjoint paths with common root and end tuple
    // path A: 0 1 2 3 4; path B: 0 1 5 3 4 would share end (3,4)
    Hypergraph planted(3, 7, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4},
                              {0, 1, 5}, {1, 5, 3}, {5, 3, 4}});
    auto d1 = dl_census(planted, std::vector<int>{0, 1}, 3);
    CHECK(d1.counts[0] == 1);
    CHECK(d1.total() == 1);
}

TEST_CASE("dl_census equals the pair-enumeration oracle on K_7") {
    Hypergraph k7 = Hypergraph::complete(3, 7);
    int ell = 3;
    auto d = dl_census(k7, std::vector<int>{0, 1}, ell);
    // oracle: enumerate all paths, then classify all pairs
    std::vector<std::vector<int>> paths;
    {
        std::vector<int> seq{0, 1};
        std::vector<bool> blocked(7, false);
        blocked[0] = blocked[1] = true;
        auto rec = [&](auto&& self, int left) -> void {
            if (left == 0) {
                paths.push_back(seq);
                return;
            }
            std::span<const int> win(seq.data() + seq.size() - 2, 2);
            for (int v : k7.codegree_set(win)) {
                if (blocked[v]) continue;
                blocked[v] = true;
                seq.push_back(v);
                self(self, left - 1);
                seq.pop_back();
                blocked[v] = false;
            }
        };
        rec(rec, ell);
    }
    std::vector<long long> expect(ell - 2 + 1, 0);
    for (size_t a = 0; a < paths.size(); ++a) {
        for (size_t b = a + 1; b < paths.size(); ++b) {
            std::vector<int> ea(paths[a].end() - 2, paths[a].end());
            std::vector<int> eb(paths[b].end() - 2, paths[b].end());
            if (ea != eb) continue;
            std::set<int> ia(paths[a].begin() + 2, paths[a].end() - 2);
            std::set<int> ib(paths[b].begin() + 2, paths[b].end() - 2);
            int shared = 0;
            for (int v : ia) shared += ib.count(v);
            ++expect[shared];
        }
    }
    CHECK(d.counts == expect);
}

TEST_CASE("greedy good extension on the complete graph counts falling factorials") {
    Hypergraph k7 = Hypergraph::complete(3, 7);
    GoodnessParams gp{0.5, 1.0, 3};
    ExtensionPolicy policy;
    policy.cap = 1'000'000;
    auto paths = greedy_good_extension(k7, std::vector<int>{0, 1}, 3, {}, {}, gp, policy);
    // (n-k+1)(n-k)(n-k-1) = 5*4*3
    CHECK(paths.size() == 60);
}

TEST_CASE("greedy good extension dies when S blocks every step") {
    Hypergraph k7 = Hypergraph::complete(3, 7);
    GoodnessParams gp{0.5, 1.0, 2};
    std::vector<int> s{2, 3, 4, 5, 6};
    auto paths = greedy_good_extension(k7, std::vector<int>{0, 1}, 2, s, {}, gp, {});
    CHECK(paths.empty());
}

TEST_CASE("greedy good extension outputs survive validators and goodness rechecks") {
    Hypergraph g = sample_gnp({12, 3, 0.55, 29});
    GoodnessParams gp{0.45, 0.55, 2};
    std::vector<int> s{0, 5};
    ExtensionPolicy policy;
    policy.sample = true;
    policy.sample_count = 24;
    policy.seed = 4;
    auto paths = greedy_good_extension(g, std::vector<int>{1, 2}, 3, s, {11}, gp, policy);
    GoodnessOracle oracle(g, gp);
    for (const auto& p : paths) {
        CHECK(is_tight_path(g, p.seq));
        CHECK(p.seq.size() == 2 + 3);
        for (int v : p.seq) CHECK(v != 11);
        // per-step goodness recheck: window after step i is (ell-(i-k+1))-good
        for (size_t i = 3; i + 1 < p.seq.size(); ++i) {
            std::vector<int> win(p.seq.begin() + i - 1, p.seq.begin() + i + 1);
            int level = 3 - (static_cast<int>(i) - 2);
            CHECK(oracle.is_good(win, s, level));
        }
    }
}

TEST_CASE("census JSON serialization") {
    Hypergraph k5 = Hypergraph::complete(3, 5);
    auto c = rooted_census(k5, std::vector<int>{1, 2}, 1, {});
    auto j = census_json(c);
    CHECK(j.find("\"path_count\": 3") != std::string::npos);
    CHECK(j.find("\"end_tuple_count\": 3") != std::string::npos);
    CHECK(j.find("\"truncated\": false") != std::string::npos);
}
