#include <algorithm>
#include <set>

#include "doctest.h"
#include "trl/multicomplex.hpp"
#include "trl/partitions.hpp"

using namespace trl;

namespace {

// the complete complex on q vertices up to uniformity max_u, as a
// multicomplex (unique edge per vertex set)
Multicomplex complete_multicomplex(int q, int max_u) {
    Multicomplex m;
    m.set_num_vertices(q);
    std::map<std::vector<int>, int> id_of;
    for (int u = 1; u <= max_u; ++u) {
        for_each_subset(q, u, [&](std::span<const int> s) {
            std::vector<int> vs(s.begin(), s.end());
            std::vector<int> bd;
            if (u >= 2) {
                std::vector<int> sub(u - 1);
                for (int omit = 0; omit < u; ++omit) {
                    int idx = 0;
                    for (int i = 0; i < u; ++i)
                        if (i != omit) sub[idx++] = vs[i];
                    bd.push_back(id_of.at(sub));
                }
            }
            id_of[vs] = m.add_edge(vs, bd);
        });
    }
    return m;
}

}  // namespace

TEST_CASE("a complex is a valid multicomplex") {
    auto m = complete_multicomplex(5, 3);
    CHECK_FALSE(m.validate().has_value());
}

TEST_CASE("consistency validator rejects e_xy != e_yx") {
    // two parallel 2-edges on {2,3} used inconsistently by a 4-edge's
    // boundary 3-edges
    Multicomplex m;
    m.set_num_vertices(4);
    std::map<std::vector<int>, int> id1;
    for (int v = 0; v < 4; ++v) id1[{v}] = m.add_edge({v});
    std::map<std::vector<int>, int> id2;
    for_each_subset(4, 2, [&](std::span<const int> s) {
        id2[{s[0], s[1]}] = m.add_edge({s[0], s[1]}, {id1[{s[0]}], id1[{s[1]}]});
    });
    int p2 = m.add_edge({2, 3}, {id1[{2}], id1[{3}]});  // parallel to id2[{2,3}]
    int e123 = m.add_edge({1, 2, 3}, {id2[{2, 3}], id2[{1, 3}], id2[{1, 2}]});
    int e023 = m.add_edge({0, 2, 3}, {p2, id2[{0, 3}], id2[{0, 2}]});
    int e013 = m.add_edge({0, 1, 3}, {id2[{1, 3}], id2[{0, 3}], id2[{0, 1}]});
    int e012 = m.add_edge({0, 1, 2}, {id2[{1, 2}], id2[{0, 2}], id2[{0, 1}]});
    m.add_edge({0, 1, 2, 3}, {e123, e023, e013, e012});
    auto why = m.validate();
    REQUIRE(why.has_value());
    CHECK(why->find("e_xy != e_yx") != std::string::npos);
}

TEST_CASE("find_tight_link on the complete multicomplex") {
    // 3(k-1)+1 = 7 vertices at k=3, all cells present once
    auto m = complete_multicomplex(7, 3);
    auto kminus1 = m.edges_of_uniformity(2);
    REQUIRE_FALSE(kminus1.empty());
    OrderedEdge u{kminus1.front(), m.edge(kminus1.front()).vertices};
    OrderedEdge v{kminus1.back(), m.edge(kminus1.back()).vertices};
    auto link = find_tight_link(m, u, v);
    REQUIRE(link.has_value());
    CHECK(link->w.size() == 2);
    CHECK(link->eu.size() == 2);
    CHECK(link->ev.size() == 2);

    // u = v with the same order is permitted
    auto self_link = find_tight_link(m, u, u);
    CHECK(self_link.has_value());
}

TEST_CASE("find_tight_link fails from an isolated edge") {
    auto m = complete_multicomplex(5, 3);
    // an extra 2-edge on fresh vertices in no 3-edge
    int a = m.add_edge({5});
    int b = m.add_edge({6});
    int iso = m.add_edge({5, 6}, {a, b});
    m.set_num_vertices(7);
    OrderedEdge u{iso, {5, 6}};
    auto other = m.edges_of_uniformity(2).front();
    OrderedEdge v{other, m.edge(other).vertices};
    CHECK_FALSE(find_tight_link(m, u, v).has_value());
    CHECK_FALSE(is_tightly_linked(m));
}

TEST_CASE("tight linkedness of complete and split multicomplexes") {
    auto m = complete_multicomplex(7, 3);
    CHECK(is_tightly_linked(m));
    CHECK(is_tightly_linked_serial(m));

    // two disjoint complete components: no link crosses
    Multicomplex two;
    two.set_num_vertices(8);
    std::map<std::vector<int>, int> ids;
    for (int base : {0, 4}) {
        for (int u = 1; u <= 3; ++u) {
            for_each_subset(4, u, [&](std::span<const int> s) {
                std::vector<int> vs;
                for (int x : s) vs.push_back(base + x);
                std::vector<int> bd;
                if (u >= 2) {
                    std::vector<int> sub;
                    for (int omit = 0; omit < u; ++omit) {
                        sub.clear();
                        for (int i = 0; i < u; ++i)
                            if (i != omit) sub.push_back(vs[i]);
                        bd.push_back(ids.at(sub));
                    }
                }
                ids[vs] = two.add_edge(vs, bd);
            });
        }
    }
    CHECK_FALSE(two.validate().has_value());
    CHECK_FALSE(is_tightly_linked(two));
    CHECK(is_tightly_linked(two) == is_tightly_linked_serial(two));
}

TEST_CASE("link_to_path expands every found link to a homomorphic tight path") {
    auto m = complete_multicomplex(7, 3);
    auto kminus1 = m.edges_of_uniformity(2);
    int checked = 0;
    for (int a : kminus1) {
        for (int b : kminus1) {
            OrderedEdge u{a, m.edge(a).vertices};
            OrderedEdge v{b, m.edge(b).vertices};
            auto link = find_tight_link(m, u, v);
            REQUIRE(link.has_value());
            auto seq = link_to_path(m, *link);
            REQUIRE(seq.has_value());
            // starts with u's order
            CHECK(std::equal(u.order.begin(), u.order.end(), seq->begin()));
            // ends on v's vertex set
            std::set<int> tail(seq->end() - 2, seq->end());
            std::set<int> vset(m.edge(b).vertices.begin(), m.edge(b).vertices.end());
            CHECK(tail == vset);
            // every window is a k-edge of the link, consumed in order:
            // some nondecreasing stage assignment with unit steps must
            // cover all stages (duplicate stage edges make greedy walks
            // ambiguous, so check feasibility by DP)
            std::vector<int> stages = link->eu;
            for (auto it = link->ev.rbegin(); it != link->ev.rend(); ++it)
                stages.push_back(*it);
            size_t num_windows = seq->size() - 2;
            auto matches = [&](size_t w, size_t t) {
                std::set<int> win(seq->begin() + w, seq->begin() + w + 3);
                const auto& vs = m.edge(stages[t]).vertices;
                return win == std::set<int>(vs.begin(), vs.end());
            };
            std::vector<std::vector<bool>> feas(num_windows,
                                                std::vector<bool>(stages.size(), false));
            for (size_t t = 0; t < stages.size(); ++t) feas[0][t] = (t == 0) && matches(0, 0);
            for (size_t w = 1; w < num_windows; ++w)
                for (size_t t = 0; t < stages.size(); ++t)
                    feas[w][t] = matches(w, t) &&
                                 (feas[w - 1][t] || (t > 0 && feas[w - 1][t - 1]));
            CHECK(feas[num_windows - 1][stages.size() - 1]);
            if (++checked >= 40) return;  // keep the all-pairs sweep short
        }
    }
}

TEST_CASE("family multicomplex is d-equitable with the constructed cell fan-out") {
    auto f = random_family(18, 3, 3, 2, 11);
    REQUIRE_FALSE(f.validate().has_value());
    auto fc = f.to_multicomplex();
    CHECK_FALSE(fc.mc.validate().has_value());
    // every supported 2-polyad (pair of 1-edges) supports exactly 1/d_2 = 2 cells
    auto ones = fc.mc.edges_of_uniformity(1);
    for (size_t i = 0; i < ones.size(); ++i) {
        for (size_t j = i + 1; j < ones.size(); ++j) {
            int count = 0;
            for (int id : fc.mc.edges_of_uniformity(2)) {
                const auto& bd = fc.mc.edge(id).boundary;
                if (std::binary_search(bd.begin(), bd.end(), ones[i]) &&
                    std::binary_search(bd.begin(), bd.end(), ones[j]))
                    ++count;
            }
            CHECK(count == 2);
        }
    }
}

TEST_CASE("d-equitability of family multicomplexes and its failure modes") {
    auto f = random_family(18, 3, 3, 2, 11);
    auto fc = f.to_multicomplex();
    // d_2 = 1/2 from the cell fan-out; each supported polyad carries one k-edge
    std::vector<double> densities{0, 0, 0.5, 1.0};
    std::string why;
    CHECK(is_d_equitable(fc.mc, densities, &why));
    // wrong density vector is rejected
    std::vector<double> wrong{0, 0, 1.0, 1.0};
    CHECK_FALSE(is_d_equitable(fc.mc, wrong, &why));
    // the polyad union of a crossing pair is the two clusters as 1-edges
    std::vector<int> q{0, static_cast<int>(f.clusters()[1].front())};
    q[0] = f.clusters()[0].front();
    std::sort(q.begin(), q.end());
    auto uni = f.polyad_union(q);
    CHECK(uni.size() == 12);  // two clusters of size 6
}
