#pragma once

#include <iosfwd>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trl/util.hpp"

namespace trl {

// k-uniform hypergraph on vertices {0..n-1}. Edges are stored as sorted
// k-tuples, deduplicated, in lexicographic order. The codegree index maps
// every (k-1)-subset that lies in at least one edge to the sorted list of
// completing vertices; it is built eagerly because codegree queries dominate
// all the search loops.
class Hypergraph {
  public:
    Hypergraph(int k, int n, std::vector<std::vector<int>> edges);

    int k() const { return k_; }
    int n() const { return n_; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    size_t num_edges() const { return edges_.size(); }

    // xs need not be sorted; duplicates make it a non-edge.
    bool has_edge(std::span<const int> xs) const;

    // Completions of a (k-1)-set; empty list when the set is in no edge.
    const std::vector<int>& codegree_set(std::span<const int> xs) const;
    int codegree(std::span<const int> xs) const;

    int min_codegree() const;

    // Subgraph with the same vertex set and the given edge subset.
    Hypergraph restrict_edges(const std::vector<std::vector<int>>& keep) const;

    static Hypergraph complete(int k, int n);

    // Text format: first line "k n m", then m lines of k ascending indices.
    static Hypergraph read_text(std::istream& in);
    void write_text(std::ostream& out) const;

  private:
    int k_, n_;
    std::vector<std::vector<int>> edges_;
    std::unordered_set<uint64_t> edge_ranks_;
    std::unordered_map<uint64_t, std::vector<int>> codeg_;
};

}  // namespace trl
