#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trl/util.hpp"

namespace trl {

// k-multicomplex: edges carry explicit ids so parallel edges on the same
// vertex set can coexist; the boundary map names the supporting edges one
// uniformity down. Edge 0 is the unique empty edge.
struct McEdge {
    int id = 0;
    std::vector<int> vertices;  // sorted, size = uniformity
    std::vector<int> boundary;  // ids, size = uniformity (or {0} for 1-edges)
};

class Multicomplex {
  public:
    Multicomplex() { edges_.push_back(McEdge{0, {}, {}}); }

    // Adds an edge; vertices sorted internally. 1-edges get boundary {0}
    // automatically. Returns the id.
    int add_edge(std::vector<int> vertices, std::vector<int> boundary = {});

    int num_vertices() const { return num_vertices_; }
    void set_num_vertices(int n) { num_vertices_ = n; }

    const McEdge& edge(int id) const { return edges_.at(id); }
    bool alive(int id) const { return alive_.at(id); }
    size_t num_edge_records() const { return edges_.size(); }

    // ids of live edges with the given uniformity
    std::vector<int> edges_of_uniformity(int u) const;
    // live (u+1)-edges whose boundary contains id
    std::vector<int> coboundary(int id) const;
    // live edges with exactly this sorted vertex set
    std::vector<int> edges_on(std::span<const int> sorted_vertices) const;

    // Checks the boundary shape (one supporting edge omitting each vertex)
    // and the e_{xy} = e_{yx} consistency condition over all (e,x,y).
    // Returns an explanation for the first failure.
    std::optional<std::string> validate() const;

    // Submulticomplex on the given live ids (must be downward closed over
    // boundaries); retains ids.
    Multicomplex restricted_to(const std::vector<int>& keep_ids) const;
    void kill_edge(int id);  // marks dead (used by the reduction cascade)

    int max_uniformity() const;

  private:
    int num_vertices_ = 0;
    std::vector<McEdge> edges_;
    std::vector<bool> alive_{true};
};

// d-equitability: for every uniformity i >= 2 and every admissible boundary
// collection S (one (i-1)-edge per omitted vertex, union of boundaries of
// size binom(i, i-2)), the number of i-edges supported on S is exactly
// 1/d_i. densities is indexed by uniformity.
bool is_d_equitable(const Multicomplex& m, const std::vector<double>& densities,
                    std::string* why = nullptr);

// Ordered (k-1)-edge: an edge id plus an ordering of its vertices.
struct OrderedEdge {
    int id = 0;
    std::vector<int> order;  // permutation of edge(id).vertices
};

// The connectivity gadget between tuples: vertices w_1..w_{k-1} and k-edges
// e_{j,u}, e_{j,v} with the prescribed incidences.
struct TightLink {
    OrderedEdge u, v;
    std::vector<int> w;       // w_1..w_{k-1}
    std::vector<int> eu, ev;  // ids e_{1,u}..e_{k-1,u} and e_{1,v}..e_{k-1,v}
};

// Exhaustive deterministic backtracking over w vertices and supporting
// edges, in ascending id order. k is the top uniformity of the multicomplex.
std::optional<TightLink> find_tight_link(const Multicomplex& m, const OrderedEdge& u,
                                         const OrderedEdge& v);

// True iff find_tight_link succeeds for every ordered pair of ordered
// (k-1)-edges. OpenMP-parallel over pairs; the serial reference is kept for
// testing.
bool is_tightly_linked(const Multicomplex& m);
bool is_tightly_linked_serial(const Multicomplex& m);

// Walk on window states using only the link's k-edges, consuming them in the
// order e_{1,u},..,e_{k-1,u},e_{k-1,v},..,e_{1,v} (consecutive repeats
// allowed), starting at u's order and ending on v's vertex set. Returns the
// homomorphic tight-path image as a vertex sequence; this is the constructive
// check that a link expands to a tight path.
std::optional<std::vector<int>> link_to_path(const Multicomplex& m, const TightLink& link);

}  // namespace trl
