#include "trl/partitions.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace trl {

FamilyOfPartitions::FamilyOfPartitions(int n, int k, std::vector<int> cluster_of)
    : n_(n), k_(k), cluster_of_(std::move(cluster_of)) {
    if (k < 2) throw invalid_input("FamilyOfPartitions: k must be >= 2");
    if (static_cast<int>(cluster_of_.size()) != n)
        throw invalid_input("FamilyOfPartitions: cluster map size != n");
    t_ = 0;
    for (int c : cluster_of_) {
        if (c < 0) throw invalid_input("FamilyOfPartitions: negative cluster");
        t_ = std::max(t_, c + 1);
    }
    clusters_.assign(t_, {});
    for (int v = 0; v < n; ++v) clusters_[cluster_of_[v]].push_back(v);
    next_cell_id_ = t_;
}

bool FamilyOfPartitions::is_crossing(std::span<const int> s) const {
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= n_) return false;
        for (size_t j = i + 1; j < s.size(); ++j)
            if (cluster_of_[s[i]] == cluster_of_[s[j]]) return false;
    }
    return true;
}

int FamilyOfPartitions::assign_cell(std::span<const int> s, int local_cell_index) {
    int j = static_cast<int>(s.size());
    if (j < 2 || j > k_ - 1) throw invalid_input("assign_cell: uniformity out of range");
    if (!std::is_sorted(s.begin(), s.end())) throw invalid_input("assign_cell: set not sorted");
    if (!is_crossing(s)) throw invalid_input("assign_cell: set not crossing");
    std::vector<int> index_set;
    for (int v : s) index_set.push_back(cluster_of_[v]);
    std::sort(index_set.begin(), index_set.end());
    auto key = std::make_pair(index_set, local_cell_index);
    auto it = cell_key_.find(key);
    int id;
    if (it == cell_key_.end()) {
        id = next_cell_id_++;
        cell_key_[key] = id;
        cell_index_set_[id] = index_set;
    } else {
        id = it->second;
    }
    uint64_t r = subset_rank(s);
    auto [pos, inserted] = cell_assignment_.try_emplace(r, id);
    if (!inserted && pos->second != id) throw invalid_input("assign_cell: set assigned twice");
    if (inserted) cell_members_[id].emplace_back(s.begin(), s.end());
    return id;
}

int FamilyOfPartitions::cell_of(std::span<const int> s) const {
    if (s.size() == 1) return cluster_of_.at(s[0]);
    auto it = cell_assignment_.find(subset_rank(s));
    return it == cell_assignment_.end() ? -1 : it->second;
}

std::vector<FamilyOfPartitions::CellInfo> FamilyOfPartitions::cells_of_size(int j) const {
    std::vector<CellInfo> out;
    if (j == 1) {
        for (int c = 0; c < t_; ++c) {
            CellInfo info{c, {c}, {}};
            for (int v : clusters_[c]) info.members.push_back({v});
            out.push_back(std::move(info));
        }
        return out;
    }
    for (int id = t_; id < next_cell_id_; ++id) {
        auto it = cell_index_set_.find(id);
        if (it == cell_index_set_.end() || static_cast<int>(it->second.size()) != j) continue;
        CellInfo info{id, it->second, {}};
        auto mem = cell_members_.find(id);
        if (mem != cell_members_.end()) info.members = mem->second;
        std::sort(info.members.begin(), info.members.end());
        out.push_back(std::move(info));
    }
    return out;
}

int FamilyOfPartitions::num_cells_of_size(int j) const {
    return static_cast<int>(cells_of_size(j).size());
}

const std::vector<int>& FamilyOfPartitions::cell_index_set(int cell_id) const {
    static const std::vector<int> kEmpty;
    auto it = cell_index_set_.find(cell_id);
    return it == cell_index_set_.end() ? kEmpty : it->second;
}

const std::vector<std::vector<int>>& FamilyOfPartitions::cell_members(int cell_id) const {
    static const std::vector<std::vector<int>> kEmpty;
    auto it = cell_members_.find(cell_id);
    return it == cell_members_.end() ? kEmpty : it->second;
}

std::optional<std::vector<int>> FamilyOfPartitions::polyad_signature(
    std::span<const int> s) const {
    int j = static_cast<int>(s.size());
    if (j < 2 || j > k_) return std::nullopt;
    if (!is_crossing(s)) return std::nullopt;
    std::vector<int> sig;
    std::vector<int> sub(j - 1);
    for (int omit = 0; omit < j; ++omit) {
        int idx = 0;
        for (int i = 0; i < j; ++i)
            if (i != omit) sub[idx++] = s[i];
        int c = cell_of(sub);
        if (c < 0) return std::nullopt;
        sig.push_back(c);
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

std::optional<std::string> FamilyOfPartitions::validate() const {
    // every member of a cell must project, per one-smaller index subset, into
    // a common cell; equivalently all members share the polyad signature
    for (int j = 2; j <= k_ - 1; ++j) {
        for (const auto& cell : cells_of_size(j)) {
            std::optional<std::vector<int>> sig;
            for (const auto& s : cell.members) {
                auto ps = polyad_signature(s);
                if (!ps) return "cell " + std::to_string(cell.id) + ": member with unassigned subset";
                if (!sig) {
                    sig = ps;
                } else if (*sig != *ps) {
                    return "cell " + std::to_string(cell.id) + ": members cross polyads";
                }
            }
        }
    }
    // every crossing j-set must be in exactly one cell (try_emplace precludes
    // two cells; here we check none is missing)
    for (int j = 2; j <= k_ - 1; ++j) {
        bool missing = false;
        for_each_subset(n_, j, [&](std::span<const int> s) {
            if (!missing && is_crossing(s) && cell_of(s) < 0) missing = true;
        });
        if (missing) return "Cross_" + std::to_string(j) + " not fully partitioned";
    }
    return std::nullopt;
}

bool FamilyOfPartitions::refines(const FamilyOfPartitions& coarser, std::string* why) const {
    if (n_ != coarser.n() || k_ != coarser.k()) {
        if (why) *why = "shape mismatch";
        return false;
    }
    // clusters refine clusters
    for (const auto& cl : clusters_) {
        std::set<int> target;
        for (int v : cl) target.insert(coarser.cluster_of(v));
        if (target.size() > 1) {
            if (why) *why = "cluster crosses coarser clusters";
            return false;
        }
    }
    for (int j = 2; j <= k_ - 1; ++j) {
        for (const auto& cell : cells_of_size(j)) {
            std::set<int> target;
            for (const auto& s : cell.members) target.insert(coarser.cell_of(s));
            if (target.size() > 1 || target.count(-1)) {
                if (why)
                    *why = "cell " + std::to_string(cell.id) + " crosses coarser cells";
                return false;
            }
        }
    }
    return true;
}

FamilyOfPartitions::FamilyComplex FamilyOfPartitions::to_multicomplex() const {
    FamilyComplex fc;
    fc.mc.set_num_vertices(t_);
    // 1-edges: one per cluster, id = cluster id (add in order)
    for (int c = 0; c < t_; ++c) {
        int id = fc.mc.add_edge({c});
        fc.cell_of_edge[id] = c;
    }
    // j-cells become j-edges; boundary = supporting cells via any member
    std::map<int, int> edge_of_cell;
    for (int c = 0; c < t_; ++c) edge_of_cell[c] = c + 1;  // edge ids shift by 1 (id 0 = empty)
    for (int j = 2; j <= k_ - 1; ++j) {
        for (const auto& cell : cells_of_size(j)) {
            if (cell.members.empty()) continue;
            const auto& rep = cell.members.front();
            std::vector<int> bd;
            std::vector<int> sub(j - 1);
            for (int omit = 0; omit < j; ++omit) {
                int idx = 0;
                for (int i = 0; i < j; ++i)
                    if (i != omit) sub[idx++] = rep[i];
                int sc = cell_of(sub);
                bd.push_back(edge_of_cell.at(sc));
            }
            int id = fc.mc.add_edge(cell.index_set, bd);
            edge_of_cell[cell.id] = id;
            fc.cell_of_edge[id] = cell.id;
        }
    }
    // k-edges: one per supported k-polyad. A polyad is a set S of k
    // (k-1)-cells, one per (k-1)-subset of a k-set of clusters, such that the
    // boundary union condition holds; enumerate via signatures of crossing
    // k-sets to list exactly the supported ones.
    std::set<std::vector<int>> sigs;
    for_each_subset(n_, k_, [&](std::span<const int> s) {
        auto sig = polyad_signature(s);
        if (sig) sigs.insert(*sig);
    });
    for (const auto& sig : sigs) {
        std::vector<int> bd, verts;
        std::set<int> cluster_set;
        for (int c : sig) {
            bd.push_back(edge_of_cell.at(c));
            for (int cl : cell_index_set(c)) cluster_set.insert(cl);
        }
        verts.assign(cluster_set.begin(), cluster_set.end());
        int id = fc.mc.add_edge(verts, bd);
        fc.kedge_index[id] = static_cast<int>(fc.kedge_signature.size());
        fc.kedge_signature.push_back(sig);
    }
    return fc;
}

std::string FamilyOfPartitions::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    j["k"] = k_;
    j["clusters"] = clusters_;
    auto cells = nlohmann::ordered_json::array();
    for (int jj = 2; jj <= k_ - 1; ++jj) {
        for (const auto& cell : cells_of_size(jj)) {
            nlohmann::ordered_json c;
            c["id"] = cell.id;
            c["index_set"] = cell.index_set;
            c["member_list"] = cell.members;
            cells.push_back(c);
        }
    }
    j["cells"] = cells;
    return j.dump(2);
}

FamilyOfPartitions FamilyOfPartitions::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    auto clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
    std::vector<int> cluster_of(n, -1);
    for (size_t c = 0; c < clusters.size(); ++c)
        for (int v : clusters[c]) cluster_of.at(v) = static_cast<int>(c);
    FamilyOfPartitions f(n, k, std::move(cluster_of));
    // remap ids: use (index_set, position within file) as local index
    std::map<std::vector<int>, int> local_counter;
    for (const auto& c : j.at("cells")) {
        auto index_set = c.at("index_set").get<std::vector<int>>();
        int local = local_counter[index_set]++;
        for (const auto& m : c.at("member_list")) {
            auto s = m.get<std::vector<int>>();
            f.assign_cell(s, local);
        }
    }
    return f;
}

FamilyOfPartitions random_family(int n, int k, int t, int cells_per_polyad, uint64_t seed) {
    if (t <= 0 || n % t != 0) throw invalid_input("random_family: t must divide n");
    // clusters striped deterministically: vertex v in cluster v % t would
    // bias contiguity; use a seeded shuffle instead
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    Rng rng(mix_seed(seed, 0xFA111ULL));
    rng.shuffle(verts);
    std::vector<int> cluster_of(n);
    for (int i = 0; i < n; ++i) cluster_of[verts[i]] = i % t;
    FamilyOfPartitions f(n, k, cluster_of);
    // assign j-cells hierarchically: the cell of a j-set is its polyad
    // signature plus a seeded draw, so cells refine polyads by construction
    std::map<std::vector<int>, int> polyad_base;
    int next_base = 0;
    for (int j = 2; j <= k - 1; ++j) {
        for_each_subset(n, j, [&](std::span<const int> s) {
            if (!f.is_crossing(s)) return;
            auto sig = f.polyad_signature(s);
            auto [it, fresh] = polyad_base.try_emplace(*sig, next_base);
            if (fresh) next_base += cells_per_polyad;
            Rng draw(mix_seed(seed, subset_rank(s), static_cast<uint64_t>(j)));
            int local_idx = static_cast<int>(draw.next_below(cells_per_polyad));
            f.assign_cell(s, it->second + local_idx);
        });
    }
    return f;
}

FamilyOfPartitions refine_family(const FamilyOfPartitions& f, int ways, uint64_t seed) {
    FamilyOfPartitions out(f.n(), f.k(), [&] {
        std::vector<int> c(f.n());
        for (int v = 0; v < f.n(); ++v) c[v] = f.cluster_of(v);
        return c;
    }());
    for (int j = 2; j <= f.k() - 1; ++j) {
        for (const auto& cell : f.cells_of_size(j)) {
            for (const auto& s : cell.members) {
                Rng draw(mix_seed(seed, cell.id, subset_rank(s)));
                int part = static_cast<int>(draw.next_below(ways));
                out.assign_cell(s, cell.id * ways + part);
            }
        }
    }
    return out;
}

}  // namespace trl

namespace trl {

std::vector<std::vector<int>> FamilyOfPartitions::polyad_union(
    std::span<const int> s) const {
    std::set<std::vector<int>> edges;
    int j = static_cast<int>(s.size());
    std::vector<int> sub(j - 1);
    for (int omit = 0; omit < j; ++omit) {
        int idx = 0;
        for (int i = 0; i < j; ++i)
            if (i != omit) sub[idx++] = s[i];
        int c = cell_of(sub);
        if (c < 0) continue;
        if (j - 1 == 1) {
            for (int v : clusters_.at(c)) edges.insert({v});
            continue;
        }
        for (const auto& mem : cell_members(c)) edges.insert(mem);
    }
    return {edges.begin(), edges.end()};
}

}  // namespace trl
