#include "trl/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace trl {

Hypergraph::Hypergraph(int k, int n, std::vector<std::vector<int>> edges) : k_(k), n_(n) {
    if (k < 2) throw invalid_input("Hypergraph: k must be >= 2");
    if (n < 0) throw invalid_input("Hypergraph: n must be >= 0");
    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != k) throw invalid_input("Hypergraph: edge arity != k");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw invalid_input("Hypergraph: repeated vertex in edge");
        if (e.front() < 0 || e.back() >= n) throw invalid_input("Hypergraph: vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    edge_ranks_.reserve(edges_.size() * 2);
    for (const auto& e : edges_) {
        edge_ranks_.insert(subset_rank(e));
        std::vector<int> sub(k_ - 1);
        for (int omit = 0; omit < k_; ++omit) {
            int idx = 0;
            for (int i = 0; i < k_; ++i)
                if (i != omit) sub[idx++] = e[i];
            codeg_[subset_rank(sub)].push_back(e[omit]);
        }
    }
    for (auto& [key, completions] : codeg_) std::sort(completions.begin(), completions.end());
}

bool Hypergraph::has_edge(std::span<const int> xs) const {
    if (static_cast<int>(xs.size()) != k_) return false;
    std::vector<int> s(xs.begin(), xs.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    return edge_ranks_.count(subset_rank(s)) > 0;
}

const std::vector<int>& Hypergraph::codegree_set(std::span<const int> xs) const {
    static const std::vector<int> kEmpty;
    if (static_cast<int>(xs.size()) != k_ - 1) throw invalid_input("codegree_set: bad arity");
    std::vector<int> s(xs.begin(), xs.end());
    std::sort(s.begin(), s.end());
    auto it = codeg_.find(subset_rank(s));
    return it == codeg_.end() ? kEmpty : it->second;
}

int Hypergraph::codegree(std::span<const int> xs) const {
    return static_cast<int>(codegree_set(xs).size());
}

int Hypergraph::min_codegree() const {
    uint64_t total = binom(n_, k_ - 1);
    if (codeg_.size() < total) return 0;
    size_t best = SIZE_MAX;
    for (const auto& [key, completions] : codeg_) best = std::min(best, completions.size());
    return best == SIZE_MAX ? 0 : static_cast<int>(best);
}

Hypergraph Hypergraph::restrict_edges(const std::vector<std::vector<int>>& keep) const {
    return Hypergraph(k_, n_, keep);
}

Hypergraph Hypergraph::complete(int k, int n) {
    std::vector<std::vector<int>> es;
    for_each_subset(n, k, [&](std::span<const int> s) { es.emplace_back(s.begin(), s.end()); });
    return Hypergraph(k, n, std::move(es));
}

Hypergraph Hypergraph::read_text(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw invalid_input("line 1: missing header");
    std::istringstream hdr(line);
    int k, n;
    long long m;
    if (!(hdr >> k >> n >> m) || k < 2 || n < 0 || m < 0)
        throw invalid_input("line " + std::to_string(lineno) + ": bad header, expected \"k n m\"");
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line())
            throw invalid_input("line " + std::to_string(lineno + 1) + ": expected " +
                                std::to_string(m) + " edges, got " + std::to_string(i));
        std::istringstream es(line);
        std::vector<int> e(k);
        for (int j = 0; j < k; ++j) {
            if (!(es >> e[j]))
                throw invalid_input("line " + std::to_string(lineno) + ": expected " +
                                    std::to_string(k) + " vertex indices");
            if (e[j] < 0 || e[j] >= n)
                throw invalid_input("line " + std::to_string(lineno) + ": vertex out of range");
            if (j > 0 && e[j] <= e[j - 1])
                throw invalid_input("line " + std::to_string(lineno) +
                                    ": vertices must be strictly ascending");
        }
        int extra;
        if (es >> extra)
            throw invalid_input("line " + std::to_string(lineno) + ": trailing tokens");
        edges.push_back(std::move(e));
    }
    return Hypergraph(k, n, std::move(edges));
}

void Hypergraph::write_text(std::ostream& out) const {
    out << k_ << ' ' << n_ << ' ' << edges_.size() << '\n';
    for (const auto& e : edges_) out << join_ints(e) << '\n';
}

}  // namespace trl
