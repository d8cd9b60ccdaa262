#include "trl/randmodel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace trl {

Hypergraph sample_gnp(const GnpParams& params) {
    if (params.n < params.k) throw invalid_input("sample_gnp: n < k");
    if (params.p < 0.0 || params.p > 1.0) throw invalid_input("sample_gnp: p outside [0,1]");
    Rng rng(params.seed);
    std::vector<std::vector<int>> edges;
    for_each_subset(params.n, params.k, [&](std::span<const int> s) {
        if (rng.next_double() < params.p) edges.emplace_back(s.begin(), s.end());
    });
    return Hypergraph(params.k, params.n, std::move(edges));
}

namespace {

AdversaryResult apply_parity(const Hypergraph& g, const ParityAdversary& spec) {
    for (int v : spec.a)
        if (v < 0 || v >= g.n()) throw invalid_input("parity adversary: A not within V");
    std::set<int> a(spec.a.begin(), spec.a.end());
    std::vector<std::vector<int>> keep;
    for (const auto& e : g.edges()) {
        int c = 0;
        for (int v : e) c += a.count(v);
        if ((c % 2 == 1) == spec.keep_odd) keep.push_back(e);
    }
    return {g.restrict_edges(keep)};
}

AdversaryResult apply_thinning(const Hypergraph& g, double q, uint64_t seed,
                               std::vector<std::vector<int>>* deleted) {
    if (q < 0.0 || q > 1.0) throw invalid_input("random_thinning: q outside [0,1]");
    Rng rng(seed);
    std::vector<std::vector<int>> keep;
    for (const auto& e : g.edges()) {
        if (rng.next_double() < q) {
            if (deleted) deleted->push_back(e);
        } else {
            keep.push_back(e);
        }
    }
    return {g.restrict_edges(keep)};
}

AdversaryResult apply_floor_repair(const Hypergraph& g, const CodegreeFloorRepair& spec,
                                   uint64_t seed) {
    std::vector<std::vector<int>> deleted;
    AdversaryResult thinned = apply_thinning(g, spec.q, seed, &deleted);
    int k = g.k();
    // current degree per (k-1)-set, plus which deleted edges touch it
    std::map<std::vector<int>, int> degree;
    std::map<std::vector<int>, std::vector<size_t>> deleted_at;
    auto subsets_of = [&](const std::vector<int>& e) {
        std::vector<std::vector<int>> subs;
        for (int omit = 0; omit < k; ++omit) {
            std::vector<int> s;
            for (int i = 0; i < k; ++i)
                if (i != omit) s.push_back(e[i]);
            subs.push_back(std::move(s));
        }
        return subs;
    };
    for (const auto& e : thinned.graph.edges())
        for (auto& s : subsets_of(e)) ++degree[s];
    for (size_t i = 0; i < deleted.size(); ++i)
        for (auto& s : subsets_of(deleted[i])) deleted_at[s].push_back(i);

    std::vector<bool> readd(deleted.size(), false);
    AdversaryResult res{thinned.graph};
    // walk damaged (k-1)-sets in canonical order, re-adding deleted edges
    // (canonical order again) until the target is met
    for (auto& [s, dels] : deleted_at) {
        auto deg_it = degree.find(s);
        int deg = deg_it == degree.end() ? 0 : deg_it->second;
        if (deg >= spec.target) continue;
        for (size_t idx : dels) {
            if (deg >= spec.target) break;
            if (readd[idx]) {
                continue;  // already restored for another set
            }
            readd[idx] = true;
            for (auto& t : subsets_of(deleted[idx])) ++degree[t];
            deg = degree[s];
        }
    }
    std::vector<std::vector<int>> keep = res.graph.edges();
    for (size_t i = 0; i < deleted.size(); ++i)
        if (readd[i]) keep.push_back(deleted[i]);
    res.graph = g.restrict_edges(keep);
    // report any set still below target; only sets that were ever touched can
    // be repaired, so check all sets against the final graph
    res.ok = true;
    for_each_subset(g.n(), k - 1, [&](std::span<const int> s) {
        if (res.graph.codegree(s) < spec.target) {
            res.ok = false;
            res.unreachable.emplace_back(s.begin(), s.end());
        }
    });
    return res;
}

}  // namespace

AdversaryResult apply_adversary(const Hypergraph& g, const AdversarySpec& spec, uint64_t seed) {
    if (std::holds_alternative<ParityAdversary>(spec))
        return apply_parity(g, std::get<ParityAdversary>(spec));
    if (std::holds_alternative<RandomThinning>(spec))
        return apply_thinning(g, std::get<RandomThinning>(spec).q, seed, nullptr);
    return apply_floor_repair(g, std::get<CodegreeFloorRepair>(spec), seed);
}

AdversarySpec adversary_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    std::string kind = j.at("kind").get<std::string>();
    auto params = j.value("params", nlohmann::json::object());
    if (kind == "parity") {
        ParityAdversary a;
        a.a = params.at("A").get<std::vector<int>>();
        a.keep_odd = params.value("keep", std::string("odd")) == "odd";
        return a;
    }
    if (kind == "random_thinning") {
        RandomThinning t;
        t.q = params.at("q").get<double>();
        return t;
    }
    if (kind == "codegree_floor_repair") {
        CodegreeFloorRepair r;
        r.q = params.at("q").get<double>();
        r.target = params.value("target", 0);
        return r;
    }
    throw invalid_input("unknown adversary kind: " + kind);
}

std::string adversary_to_json(const AdversarySpec& spec) {
    nlohmann::ordered_json j;
    if (const auto* a = std::get_if<ParityAdversary>(&spec)) {
        j["kind"] = "parity";
        j["params"]["A"] = a->a;
        j["params"]["keep"] = a->keep_odd ? "odd" : "even";
    } else if (const auto* t = std::get_if<RandomThinning>(&spec)) {
        j["kind"] = "random_thinning";
        j["params"]["q"] = t->q;
    } else if (const auto* r = std::get_if<CodegreeFloorRepair>(&spec)) {
        j["kind"] = "codegree_floor_repair";
        j["params"]["q"] = r->q;
        j["params"]["target"] = r->target;
    }
    return j.dump();
}

std::string adversary_name(const AdversarySpec& spec) {
    // names embed in CSV fields, so no commas
    auto num = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };
    if (const auto* a = std::get_if<ParityAdversary>(&spec))
        return "parity(" + std::to_string(a->a.size()) + (a->keep_odd ? ";odd)" : ";even)");
    if (const auto* t = std::get_if<RandomThinning>(&spec)) return "thin(" + num(t->q) + ")";
    const auto& r = std::get<CodegreeFloorRepair>(spec);
    return "floor(" + num(r.q) + ";" + std::to_string(r.target) + ")";
}

}  // namespace trl
