#include "trl/partite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace trl {

PartiteComplex::PartiteComplex(std::vector<std::vector<int>> parts, int max_arity)
    : parts_(std::move(parts)), max_arity_(max_arity) {
    if (max_arity_ < 1) throw invalid_input("PartiteComplex: max arity must be >= 1");
    int maxv = -1;
    for (const auto& p : parts_)
        for (int v : p) maxv = std::max(maxv, v);
    part_of_.assign(maxv + 1, -1);
    for (size_t i = 0; i < parts_.size(); ++i)
        for (int v : parts_[i]) {
            if (part_of_.at(v) != -1) throw invalid_input("PartiteComplex: parts overlap");
            part_of_[v] = static_cast<int>(i);
        }
    layers_.assign(max_arity_ + 1, {});
    for (const auto& p : parts_)
        for (int v : p) layers_[1].insert(subset_rank(std::vector<int>{v}));
}

void PartiteComplex::add_edge(std::span<const int> xs) {
    std::vector<int> s(xs.begin(), xs.end());
    std::sort(s.begin(), s.end());
    int arity = static_cast<int>(s.size());
    if (arity < 1 || arity > max_arity_) throw invalid_input("add_edge: bad arity");
    std::set<int> classes;
    for (int v : s) {
        if (v >= static_cast<int>(part_of_.size()) || part_of_[v] < 0)
            throw invalid_input("add_edge: vertex not in any part");
        classes.insert(part_of_[v]);
    }
    if (static_cast<int>(classes.size()) != arity) throw invalid_input("add_edge: not partite");
    layers_[arity].insert(subset_rank(s));
}

bool PartiteComplex::has_edge(std::span<const int> sorted_xs) const {
    int arity = static_cast<int>(sorted_xs.size());
    if (arity < 1 || arity > max_arity_) return false;
    return layers_[arity].count(subset_rank(sorted_xs)) > 0;
}

long long PartiteComplex::layer_size(int arity) const {
    return static_cast<long long>(layers_.at(arity).size());
}

std::optional<std::string> PartiteComplex::validate_downclosed() const {
    // enumerate crossing arity-sets and check closure on actual edges
    std::vector<int> all;
    for (const auto& p : parts_) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    int n = all.empty() ? 0 : all.back() + 1;
    std::optional<std::string> fail;
    for (int arity = 2; arity <= max_arity_; ++arity) {
        for_each_subset(n, arity, [&](std::span<const int> s) {
            if (fail) return;
            if (!layers_[arity].count(subset_rank(s))) return;
            std::vector<int> sub(arity - 1);
            for (int omit = 0; omit < arity; ++omit) {
                int idx = 0;
                for (int i = 0; i < arity; ++i)
                    if (i != omit) sub[idx++] = s[i];
                if (!has_edge(sub)) {
                    fail = "edge {" + join_ints(s, ',') + "} missing subset {" +
                           join_ints(sub, ',') + "}";
                    return;
                }
            }
        });
    }
    return fail;
}

bool PartiteComplex::is_clique(std::span<const int> sorted_xs) const {
    int q = static_cast<int>(sorted_xs.size());
    for (int arity = 1; arity <= std::min(q, max_arity_); ++arity) {
        bool bad = false;
        for_each_subset(q, arity, [&](std::span<const int> idx) {
            if (bad) return;
            std::vector<int> sub;
            for (int i : idx) sub.push_back(sorted_xs[i]);
            if (!has_edge(sub)) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

long long count_supported(const std::vector<std::vector<int>>& parts,
                          const std::function<bool(std::span<const int>)>& edge,
                          const std::function<void(std::span<const int>)>& visit) {
    int i = static_cast<int>(parts.size());
    long long count = 0;
    std::vector<int> pick(i);
    std::vector<int> sorted;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == i) {
            sorted.assign(pick.begin(), pick.end());
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> sub(i - 1);
            for (int omit = 0; omit < i; ++omit) {
                int idx = 0;
                for (int q = 0; q < i; ++q)
                    if (q != omit) sub[idx++] = sorted[q];
                if (!edge(sub)) return;
            }
            ++count;
            if (visit) visit(sorted);
            return;
        }
        for (int v : parts[pos]) {
            pick[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return count;
}

DensityCounts relative_density_counts(const std::vector<std::vector<int>>& parts,
                                      const std::function<bool(std::span<const int>)>& top,
                                      const std::function<bool(std::span<const int>)>& below) {
    DensityCounts dc;
    dc.supported = count_supported(parts, below, [&](std::span<const int> s) {
        if (top(s)) ++dc.in_top;
    });
    return dc;
}

double relative_density(const std::vector<std::vector<int>>& parts,
                        const std::function<bool(std::span<const int>)>& top,
                        const std::function<bool(std::span<const int>)>& below, double p) {
    if (p <= 0) throw invalid_input("relative_density: p must be > 0");
    return relative_density_counts(parts, top, below).density(p);
}

RegularityProbeReport regularity_probe(
    const std::vector<std::vector<int>>& parts, const std::vector<std::vector<int>>& below_edges,
    const std::function<bool(std::span<const int>)>& top, double d, double eps, double p,
    const std::vector<std::vector<std::vector<int>>>* explicit_witnesses, int samples,
    uint64_t seed) {
    RegularityProbeReport rep;
    std::set<std::vector<int>> base_set;
    for (auto e : below_edges) {
        std::sort(e.begin(), e.end());
        base_set.insert(e);
    }
    auto base_member = [&](std::span<const int> s) {
        return base_set.count(std::vector<int>(s.begin(), s.end())) > 0;
    };
    long long base_supported = count_supported(parts, base_member, nullptr);

    auto check_witness = [&](const std::vector<std::vector<int>>& kept) {
        std::set<std::vector<int>> ks;
        for (auto e : kept) {
            std::sort(e.begin(), e.end());
            if (!base_set.count(e))
                throw invalid_input("regularity_probe: witness not a subgraph");
            ks.insert(e);
        }
        auto member = [&](std::span<const int> s) {
            return ks.count(std::vector<int>(s.begin(), s.end())) > 0;
        };
        auto dc = relative_density_counts(parts, top, member);
        ++rep.witnesses_checked;
        if (static_cast<double>(dc.supported) <=
            eps * static_cast<double>(base_supported) + 1e-12)
            return;
        ++rep.witnesses_qualifying;
        double dens = dc.density(p);
        double dev = std::abs(dens - d);
        if (dev > rep.worst.deviation) {
            rep.worst.kept_edges = kept;
            rep.worst.density = dens;
            rep.worst.supported = dc.supported;
            rep.worst.deviation = dev;
        }
        if (dev > eps + 1e-9) rep.violated = true;
    };

    if (explicit_witnesses) {
        for (const auto& w : *explicit_witnesses) check_witness(w);
    } else {
        std::vector<std::vector<int>> base(base_set.begin(), base_set.end());
        for (int t = 0; t < samples; ++t) {
            Rng rng(mix_seed(seed, static_cast<uint64_t>(t)));
            double keep = 0.25 + 0.75 * rng.next_double();
            std::vector<std::vector<int>> kept;
            for (const auto& e : base)
                if (rng.next_double() < keep) kept.push_back(e);
            check_witness(kept);
        }
    }
    return rep;
}

long long count_complex_copies(const PartiteComplex& host, const PatternComplex& pattern,
                               const std::vector<std::vector<int>>* restrictions) {
    int q = pattern.num_vertices;
    if (q > 2 * (host.max_arity() + 1)) throw cap_exceeded("count_complex_copies: pattern too large");
    if (static_cast<int>(pattern.host_part.size()) != q)
        throw invalid_input("count_complex_copies: class assignment size mismatch");
    std::set<int> distinct(pattern.host_part.begin(), pattern.host_part.end());
    if (static_cast<int>(distinct.size()) != q)
        throw invalid_input("count_complex_copies: classes must be distinct per vertex");
    // per-vertex candidate pools
    std::vector<std::vector<int>> pool(q);
    for (int v = 0; v < q; ++v) {
        int part = pattern.host_part[v];
        if (restrictions && !(*restrictions)[part].empty()) {
            pool[v] = (*restrictions)[part];
        } else {
            pool[v] = host.parts()[part];
        }
    }
    // edges indexed by the highest pattern vertex they contain, so each is
    // checked as soon as fully assigned
    std::vector<std::vector<const std::vector<int>*>> check_at(q);
    for (const auto& e : pattern.edges) {
        int hi = *std::max_element(e.begin(), e.end());
        check_at[hi].push_back(&e);
    }
    std::vector<int> image(q, -1);
    long long count = 0;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == q) {
            ++count;
            return;
        }
        for (int cand : pool[v]) {
            image[v] = cand;
            bool ok = true;
            for (const auto* e : check_at[v]) {
                std::vector<int> mapped;
                for (int pv : *e) mapped.push_back(image[pv]);
                std::sort(mapped.begin(), mapped.end());
                if (!host.has_edge(mapped)) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, v + 1);
        }
        image[v] = -1;
    };
    rec(rec, 0);
    return count;
}

DegreeCensus degree_census(const PartiteComplex& host,
                           const std::vector<std::vector<int>>* restrictions, double gamma) {
    int k = host.num_parts();
    DegreeCensus dc;
    std::vector<std::vector<int>> firsts;
    for (int i = 0; i < k - 1; ++i) {
        if (restrictions && !(*restrictions)[i].empty())
            firsts.push_back((*restrictions)[i]);
        else
            firsts.push_back(host.parts()[i]);
    }
    std::vector<int> last =
        (restrictions && !(*restrictions)[k - 1].empty()) ? (*restrictions)[k - 1]
                                                          : host.parts()[k - 1];
    // (k-1)-cliques across the first k-1 parts
    std::vector<int> pick(k - 1);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k - 1) {
            std::vector<int> s(pick.begin(), pick.end());
            std::sort(s.begin(), s.end());
            if (!host.is_clique(s)) return;
            long long ext = 0;
            for (int w : last) {
                std::vector<int> full = s;
                full.insert(std::lower_bound(full.begin(), full.end(), w), w);
                if (host.is_clique(full)) ++ext;
            }
            dc.extensions.push_back(ext);
            return;
        }
        for (int v : firsts[pos]) {
            pick[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    dc.tuples = static_cast<long long>(dc.extensions.size());
    double target = static_cast<double>(last.size());
    for (int i = 2; i <= host.max_arity(); ++i) {
        double di = (static_cast<int>(host.densities.size()) > i) ? host.densities[i] : 1.0;
        target *= std::pow(di, static_cast<double>(binom(k - 1, i - 1)));
    }
    dc.target = target;
    long long within = 0;
    for (long long e : dc.extensions) {
        double x = static_cast<double>(e);
        if (x >= (1 - gamma) * target - 1e-9 && x <= (1 + gamma) * target + 1e-9)
            ++within;
        else
            dc.mass_outside += e;
    }
    dc.fraction_within = dc.tuples ? static_cast<double>(within) / dc.tuples : 1.0;
    return dc;
}

long long mdl_count(const PartiteComplex& host, const std::vector<std::vector<int>>& a_edges,
                    const std::vector<std::vector<int>>& b_edges,
                    const std::vector<std::vector<int>>& c_edges, int a, int b, int c) {
    if (a + b - c != host.num_parts())
        throw invalid_input("mdl_count: requires a + b - c = k");
    auto classes_of = [&](const std::vector<std::vector<int>>& edges) {
        std::set<int> cl;
        for (const auto& e : edges)
            for (int v : e) cl.insert(host.part_of(v));
        return cl;
    };
    std::set<std::vector<int>> aset, bset, cset;
    for (auto e : a_edges) {
        std::sort(e.begin(), e.end());
        aset.insert(e);
    }
    for (auto e : b_edges) {
        std::sort(e.begin(), e.end());
        bset.insert(e);
    }
    for (auto e : c_edges) {
        std::sort(e.begin(), e.end());
        cset.insert(e);
    }
    // every edge of B contains an edge of C
    for (const auto& e : bset) {
        bool contains = false;
        for (const auto& f : cset) {
            if (std::includes(e.begin(), e.end(), f.begin(), f.end())) {
                contains = true;
                break;
            }
        }
        if (!contains) throw invalid_input("mdl_count: B edge without C face");
    }
    std::set<int> ia = classes_of(a_edges), ib = classes_of(b_edges);
    // count k-cliques whose a-face is in A and b-face in B
    int k = host.num_parts();
    std::vector<int> pick(k);
    long long count = 0;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == k) {
            std::vector<int> s(pick.begin(), pick.end());
            std::sort(s.begin(), s.end());
            if (!host.is_clique(s)) return;
            std::vector<int> aface, bface;
            for (int v : s) {
                if (ia.count(host.part_of(v))) aface.push_back(v);
                if (ib.count(host.part_of(v))) bface.push_back(v);
            }
            if (static_cast<int>(aface.size()) != static_cast<int>(ia.size()) ||
                static_cast<int>(bface.size()) != static_cast<int>(ib.size()))
                return;
            if (aset.count(aface) && bset.count(bface)) ++count;
            return;
        }
        for (int v : host.parts()[pos]) {
            pick[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace trl
