#include "trl/rainbow.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace trl {

namespace {

// perfect matching between the k (k-1)-subsets and the k labels
bool augment(int sub, const std::vector<std::vector<bool>>& adm, std::vector<int>& label_of,
             std::vector<bool>& seen) {
    int k = static_cast<int>(adm.size());
    for (int lab = 0; lab < k; ++lab) {
        if (!adm[sub][lab] || seen[lab]) continue;
        seen[lab] = true;
        if (label_of[lab] < 0 || augment(label_of[lab], adm, label_of, seen)) {
            label_of[lab] = sub;
            return true;
        }
    }
    return false;
}

bool has_injective_labelling(const std::vector<std::vector<bool>>& adm) {
    int k = static_cast<int>(adm.size());
    std::vector<int> label_of(k, -1);
    for (int sub = 0; sub < k; ++sub) {
        std::vector<bool> seen(k, false);
        if (!augment(sub, adm, label_of, seen)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::vector<int>> rainbow_ksets(
    const std::vector<std::vector<std::vector<int>>>& families, int n) {
    int k = static_cast<int>(families.size());
    if (k < 2) throw invalid_input("rainbow_ksets: need k >= 2 families");
    std::vector<std::unordered_set<uint64_t>> fam(k);
    for (int i = 0; i < k; ++i) {
        for (auto s : families[i]) {
            if (static_cast<int>(s.size()) != k - 1)
                throw invalid_input("rainbow_ksets: family member arity != k-1");
            std::sort(s.begin(), s.end());
            fam[i].insert(subset_rank(s));
        }
    }
    std::vector<std::vector<int>> out;
    std::vector<int> sub(k - 1);
    for_each_subset(n, k, [&](std::span<const int> s) {
        std::vector<std::vector<bool>> adm(k, std::vector<bool>(k, false));
        for (int omit = 0; omit < k; ++omit) {
            int idx = 0;
            for (int i = 0; i < k; ++i)
                if (i != omit) sub[idx++] = s[i];
            uint64_t r = subset_rank(sub);
            for (int lab = 0; lab < k; ++lab) adm[omit][lab] = fam[lab].count(r) > 0;
        }
        if (has_injective_labelling(adm)) out.emplace_back(s.begin(), s.end());
    });
    return out;
}

UpperRegReport upper_reg_check(const Hypergraph& g, double p, double eta,
                               const std::vector<std::vector<std::vector<int>>>& witnesses) {
    if (static_cast<int>(witnesses.size()) != g.k())
        throw invalid_input("upper_reg_check: need k witness families");
    auto kk = rainbow_ksets(witnesses, g.n());
    long long inter = 0;
    for (const auto& s : kk)
        if (g.has_edge(s)) ++inter;
    UpperRegReport rep;
    rep.lhs = static_cast<double>(inter);
    rep.rhs = p * static_cast<double>(kk.size()) + p * eta * std::pow(g.n(), g.k());
    rep.ok = rep.lhs <= rep.rhs + 1e-9;
    return rep;
}

UpperRegSampleReport upper_reg_sample(const Hypergraph& g, double p, double eta, int num_samples,
                                      uint64_t seed) {
    UpperRegSampleReport rep;
    rep.samples = num_samples;
    rep.worst_margin = -1e300;
    int k = g.k(), n = g.n();
    for (int t = 0; t < num_samples; ++t) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(t)));
        std::vector<std::vector<std::vector<int>>> fams(k);
        for (int i = 0; i < k; ++i) {
            double keep = 0.2 + 0.8 * rng.next_double();
            for_each_subset(n, k - 1, [&](std::span<const int> s) {
                if (rng.next_double() < keep) fams[i].emplace_back(s.begin(), s.end());
            });
        }
        auto r = upper_reg_check(g, p, eta, fams);
        double margin = r.lhs - r.rhs;
        if (margin > rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst = r;
        }
        if (!r.ok) ++rep.violations;
    }
    return rep;
}

}  // namespace trl
