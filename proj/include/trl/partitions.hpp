#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trl/multicomplex.hpp"
#include "trl/util.hpp"

namespace trl {

// A (k-1)-family of partitions: a ground partition of {0..n-1} into t
// clusters plus, for every index set A with 2 <= |A| <= k-1, a partition of
// Cross_A into cells. Cell ids are globally unique; cluster i doubles as the
// 1-cell with id i.
class FamilyOfPartitions {
  public:
    FamilyOfPartitions(int n, int k, std::vector<int> cluster_of);

    int n() const { return n_; }
    int k() const { return k_; }
    int num_clusters() const { return t_; }
    const std::vector<std::vector<int>>& clusters() const { return clusters_; }
    int cluster_of(int v) const { return cluster_of_.at(v); }

    // Assigns a crossing j-set (2 <= j <= k-1, sorted) to a cell. Cells are
    // created on first use via their string key; returns the cell id.
    int assign_cell(std::span<const int> sorted_set, int local_cell_index);

    // -1 when the set is non-crossing or unassigned.
    int cell_of(std::span<const int> sorted_set) const;

    bool is_crossing(std::span<const int> sorted_set) const;

    struct CellInfo {
        int id;
        std::vector<int> index_set;  // sorted cluster ids
        std::vector<std::vector<int>> members;
    };
    // cells of uniformity j (2 <= j <= k-1), ascending id
    std::vector<CellInfo> cells_of_size(int j) const;
    int num_cells_of_size(int j) const;
    int first_cell_id() const { return t_; }
    int num_cells_total() const { return next_cell_id_ - t_; }
    const std::vector<int>& cell_index_set(int cell_id) const;
    const std::vector<std::vector<int>>& cell_members(int cell_id) const;

    // Polyad signature of a crossing j-set Q (2 <= j <= k): the sorted cell
    // ids of its (j-1)-subsets; nullopt when some subset is unassigned.
    std::optional<std::vector<int>> polyad_signature(std::span<const int> sorted_set) const;

    // The polyad itself: the union of the constituent cells of Q, as a
    // j-partite (j-1)-graph given by its edge list.
    std::vector<std::vector<int>> polyad_union(std::span<const int> sorted_set) const;

    // Validates the family condition: cells refine the partition induced one
    // level down (members of a cell project into common cells). Returns an
    // explanation for the first failure.
    std::optional<std::string> validate() const;

    // True iff every cell of this family is contained in one cell of the
    // coarser family (same ground refinement logic applies to clusters).
    bool refines(const FamilyOfPartitions& coarser, std::string* why = nullptr) const;

    // The multicomplex of the family: 1-edges are the clusters, j-edges the
    // j-cells with boundary = supporting cells, and one k-edge per supported
    // k-polyad. Returns the complex plus the mapping edge-id -> cell id (or,
    // for k-edges, the polyad signature index).
    struct FamilyComplex {
        Multicomplex mc;
        std::unordered_map<int, int> cell_of_edge;             // edge id -> cell id (unif < k)
        std::vector<std::vector<int>> kedge_signature;         // per k-edge, constituent cell ids
        std::unordered_map<int, int> kedge_index;              // edge id -> index into signatures
    };
    FamilyComplex to_multicomplex() const;

    std::string to_json() const;
    static FamilyOfPartitions from_json(const std::string& text);

  private:
    int n_, k_, t_;
    std::vector<int> cluster_of_;
    std::vector<std::vector<int>> clusters_;
    int next_cell_id_;
    std::unordered_map<uint64_t, int> cell_assignment_;  // subset rank -> cell id
    // local (index_set, local index) -> cell id
    std::map<std::pair<std::vector<int>, int>, int> cell_key_;
    std::unordered_map<int, std::vector<int>> cell_index_set_;
    std::unordered_map<int, std::vector<std::vector<int>>> cell_members_;
};

// Builds a seeded uniformly random family: equal clusters (n must be
// divisible by t), every crossing j-set assigned to one of `cells_per_polyad`
// cells supported on its polyad, hierarchically from j=2 upward.
FamilyOfPartitions random_family(int n, int k, int t, int cells_per_polyad, uint64_t seed);

// Splits every cell of f into `ways` parts (seeded), keeping the ground
// partition; the result refines f.
FamilyOfPartitions refine_family(const FamilyOfPartitions& f, int ways, uint64_t seed);

}  // namespace trl
