#include "trl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "json.hpp"

namespace trl {

std::string PipelineTrace::to_json() const {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : stages) {
        nlohmann::ordered_json e;
        e["stage"] = s.stage;
        e["ok"] = s.ok;
        e["detail"] = s.detail;
        e["vertices_used"] = s.vertices_used;
        e["nodes"] = s.nodes;
        arr.push_back(e);
    }
    j["stages"] = arr;
    j["first_cover_side"] = first_cover_side;
    nlohmann::ordered_json vs;
    for (const auto& [name, verts] : vertex_sets) vs[name] = verts;
    j["vertex_sets"] = vs;
    return j.dump(2);
}

namespace {

// (2k-1)-tight-path centred at u with all other vertices drawn from pool;
// returns the sequence a_1..a_{k-1} u b_1..b_{k-1}
std::optional<std::vector<int>> centred_block(const Hypergraph& g, int u,
                                              const std::set<int>& pool) {
    int k = g.k();
    for (const auto& e : g.edges()) {
        if (!std::binary_search(e.begin(), e.end(), u)) continue;
        bool ok = true;
        for (int v : e)
            if (v != u && !pool.count(v)) ok = false;
        if (!ok) continue;
        std::vector<int> rest;
        for (int v : e)
            if (v != u) rest.push_back(v);
        std::sort(rest.begin(), rest.end());
        do {
            // grow b_1..b_{k-1}: window p=j+1 is {a_{j+1}..a_{k-1}, u, b_1..b_j}
            std::vector<int> b(k - 1, -1);
            std::vector<bool> taken(g.n(), false);
            auto rec = [&](auto&& self, int pos) -> bool {
                if (pos == k - 1) return true;
                std::vector<int> stem;
                for (int q = pos + 2; q <= k - 1; ++q) stem.push_back(rest[q - 1]);
                stem.push_back(u);
                for (int q = 1; q <= pos; ++q) stem.push_back(b[q - 1]);
                for (int v : g.codegree_set(stem)) {
                    if (!pool.count(v) || taken[v] || v == u) continue;
                    bool in_rest = false;
                    for (int w : rest)
                        if (w == v) in_rest = true;
                    if (in_rest) continue;
                    b[pos] = v;
                    taken[v] = true;
                    if (self(self, pos + 1)) return true;
                    taken[v] = false;
                    b[pos] = -1;
                }
                return false;
            };
            if (rec(rec, 0)) {
                std::vector<int> seq = rest;
                seq.push_back(u);
                seq.insert(seq.end(), b.begin(), b.end());
                return seq;
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return std::nullopt;
}

// one greedy pass from the tail of seq; returns vertices appended
int greedy_pass(const Hypergraph& g, std::vector<int>& seq, std::vector<bool>& used,
                const std::vector<bool>& reserved, const std::vector<int>* cluster_of,
                std::vector<long long>* quota_left, Rng* rng) {
    int k = g.k();
    int appended = 0;
    while (true) {
        std::span<const int> win(seq.data() + seq.size() - (k - 1), k - 1);
        const auto& cands = g.codegree_set(win);
        // score candidates by onward degree, then smallest vertex id
        int best = -1;
        long long best_score = -1;
        std::vector<int> pool;
        for (int v : cands) {
            if (used[v] || reserved[v]) continue;
            if (quota_left && (*quota_left)[(*cluster_of)[v]] <= 0) continue;
            pool.push_back(v);
        }
        if (pool.empty()) break;
        if (rng && pool.size() > 1) {
            // randomized restart mode: pick among the pool uniformly
            best = pool[rng->next_below(pool.size())];
        } else {
            for (int v : pool) {
                // 1-step lookahead
                std::vector<int> nwin(seq.end() - (k - 2), seq.end());
                nwin.push_back(v);
                long long onward = 0;
                for (int w : g.codegree_set(nwin))
                    if (!used[w] && !reserved[w] && w != v) ++onward;
                if (onward > best_score) {
                    best_score = onward;
                    best = v;
                }
            }
        }
        seq.push_back(best);
        used[best] = true;
        if (quota_left) --(*quota_left)[(*cluster_of)[best]];
        ++appended;
    }
    return appended;
}

}  // namespace

namespace {

// try to insert u somewhere in the interior of seq; all k windows touching
// the new position must be edges. protected_[] guards the reservoir base:
// no insertion strictly between two protected positions.
bool try_insert(const Hypergraph& g, std::vector<int>& seq, std::vector<bool>& protected_,
                int u) {
    int k = g.k();
    int len = static_cast<int>(seq.size());
    for (int i = k - 2; i + 1 < len - (k - 2); ++i) {
        if (protected_[i] && protected_[i + 1]) continue;
        // candidate: insert between positions i and i+1
        int lo = std::max(0, i - (k - 1) + 1);
        int hi = std::min(len, i + k);  // exclusive
        std::vector<int> window_zone(seq.begin() + lo, seq.begin() + (i + 1));
        window_zone.push_back(u);
        window_zone.insert(window_zone.end(), seq.begin() + (i + 1), seq.begin() + hi);
        bool ok = true;
        for (size_t j = 0; j + k <= window_zone.size() && ok; ++j) {
            std::span<const int> win(window_zone.data() + j, static_cast<size_t>(k));
            bool has_u = false;
            for (int v : win)
                if (v == u) has_u = true;
            if (has_u && !g.has_edge(win)) ok = false;
        }
        if (ok) {
            seq.insert(seq.begin() + (i + 1), u);
            protected_.insert(protected_.begin() + (i + 1), false);
            return true;
        }
    }
    return false;
}

}  // namespace

ExtensionOutcome extend_attempt(const Hypergraph& g, const TightPath& p,
                                const std::vector<int>& reserved,
                                const std::vector<int>* cluster_of,
                                const std::vector<long long>* quota, const PipelineConfig& cfg,
                                int attempt) {
    int k = g.k();
    ExtensionOutcome best_out;
    size_t best_cover = 0;
    std::vector<bool> reserved_mask(g.n(), false);
    for (int v : reserved) reserved_mask[v] = true;
    for (int v : p.seq) reserved_mask[v] = false;  // path vertices are already placed

    {
        std::vector<int> seq = p.seq;
        std::vector<bool> prot(seq.size(), true);
        std::vector<bool> used(g.n(), false);
        for (int v : seq) used[v] = true;
        std::vector<long long> quota_left;
        std::vector<long long>* ql = nullptr;
        if (quota && cluster_of) {
            quota_left = *quota;
            ql = &quota_left;
        }
        Rng rng(mix_seed(cfg.seed, 0xA15, attempt));
        Rng* rp = attempt == 0 ? nullptr : &rng;  // first attempt: deterministic lookahead
        // alternate tail and head passes until neither side grows, then try
        // inserting stragglers into the interior
        bool grew = true;
        while (grew) {
            grew = false;
            int a = greedy_pass(g, seq, used, reserved_mask, cluster_of, ql, rp);
            prot.resize(seq.size(), false);
            if (a > 0) grew = true;
            std::reverse(seq.begin(), seq.end());
            std::reverse(prot.begin(), prot.end());
            a = greedy_pass(g, seq, used, reserved_mask, cluster_of, ql, rp);
            prot.resize(seq.size(), false);
            if (a > 0) grew = true;
            std::reverse(seq.begin(), seq.end());
            std::reverse(prot.begin(), prot.end());
            if (!grew) {
                for (int v = 0; v < g.n(); ++v) {
                    if (used[v] || reserved_mask[v]) continue;
                    if (ql && (*ql)[(*cluster_of)[v]] <= 0) continue;
                    if (try_insert(g, seq, prot, v)) {
                        used[v] = true;
                        if (ql) --(*ql)[(*cluster_of)[v]];
                        grew = true;
                    }
                }
            }
        }
        if (seq.size() > best_cover) {
            best_cover = seq.size();
            best_out.path.seq = seq;
        }
    }

    std::vector<bool> on_path(g.n(), false);
    for (int v : best_out.path.seq) on_path[v] = true;
    for (int v = 0; v < g.n(); ++v)
        if (!on_path[v] && !reserved_mask[v]) best_out.leftover.push_back(v);
    best_out.stalled = !best_out.leftover.empty();
    if (best_out.stalled)
        best_out.diagnostics =
            "stalled with " + std::to_string(best_out.leftover.size()) + " leftover vertices";
    return best_out;
}

ExtensionOutcome extend_almost_spanning(const Hypergraph& g, const TightPath& p,
                                        const std::vector<int>& reserved,
                                        const std::vector<int>* cluster_of,
                                        const std::vector<long long>* quota,
                                        const PipelineConfig& cfg) {
    ExtensionOutcome best;
    bool have = false;
    for (int attempt = 0; attempt <= cfg.extension_restarts; ++attempt) {
        auto eo = extend_attempt(g, p, reserved, cluster_of, quota, cfg, attempt);
        if (!have || eo.path.seq.size() > best.path.seq.size()) {
            best = eo;
            have = true;
        }
        if (best.leftover.empty()) break;
    }
    return best;
}

CoverOutcome cover_and_close(const Hypergraph& g, const ReservoirPath& pres,
                             const TightPath& p_almost, const std::vector<int>& leftover,
                             const PipelineConfig& cfg, PipelineTrace& trace) {
    int k = g.k();
    CoverOutcome out;
    const auto& r = pres.reservoir;
    double limit = cfg.cover_ratio > 0
                       ? cfg.cover_ratio * static_cast<double>(r.size())
                       : static_cast<double>(r.size()) / (4.0 * k);
    if (static_cast<double>(leftover.size()) > limit + 1e-9) {
        out.failure = PipelineFailure{
            "cover", "leftover " + std::to_string(leftover.size()) + " exceeds ratio cap", 0};
        return out;
    }

    std::set<int> r_free(r.begin(), r.end());
    std::set<int> l_remaining(leftover.begin(), leftover.end());
    // connectors and blocks draw from R plus the not-yet-covered leftover
    auto pool = [&]() {
        std::set<int> s = r_free;
        s.insert(l_remaining.begin(), l_remaining.end());
        return s;
    };
    auto avoid_for_connect = [&]() {
        auto ok = pool();
        std::vector<int> s;
        for (int v = 0; v < g.n(); ++v)
            if (!ok.count(v)) s.push_back(v);
        return s;
    };
    auto consume = [&](int v) {
        r_free.erase(v);
        l_remaining.erase(v);
    };

    // two growing arms; the w side (tail of p_almost) goes first
    std::vector<int> w_arm = p_almost.seq;             // extended at its tail
    std::vector<int> v_arm(p_almost.seq.rbegin(), p_almost.seq.rend());  // tail = head of p_almost
    // v_arm duplicates the whole path; keep only bookkeeping windows
    // (we rebuild the final cycle from scratch below)
    std::vector<int> w_ext, v_ext;  // appended vertices per side
    auto arm_tail = [&](const std::vector<int>& arm, const std::vector<int>& ext) {
        std::vector<int> s;
        if (ext.size() >= static_cast<size_t>(k - 1)) {
            s.assign(ext.end() - (k - 1), ext.end());
        } else {
            size_t need = (k - 1) - ext.size();
            s.assign(arm.end() - need, arm.end());
            s.insert(s.end(), ext.begin(), ext.end());
        }
        return s;
    };

    bool w_side = true;
    trace.first_cover_side = "w";
    uint64_t nodes = 0;
    while (!l_remaining.empty()) {
        int u = *l_remaining.begin();
        std::vector<int>& ext = w_side ? w_ext : v_ext;
        const std::vector<int>& arm = w_side ? w_arm : v_arm;
        std::vector<int> tail = arm_tail(arm, ext);
        // find a (2k-1)-block centred at u drawn from the pool
        auto pl = pool();
        pl.erase(u);
        auto blk = centred_block(g, u, pl);
        if (!blk) {
            out.failure = PipelineFailure{
                "cover", "no absorption block for vertex " + std::to_string(u), 0};
            return out;
        }
        const std::vector<int>& block = *blk;  // a_1..a_{k-1} u b_1..b_{k-1}
        std::vector<int> a_rev(block.begin(), block.begin() + (k - 1));
        std::reverse(a_rev.begin(), a_rev.end());
        // the connector may not reuse the block's own vertices
        std::vector<int> s2(block.begin(), block.end());
        auto co = connect(g, tail, a_rev, avoid_for_connect(), s2, cfg.connector_max_len,
                          cfg.node_cap);
        if (!co.path) {
            out.failure =
                PipelineFailure{"cover", "no connector to absorption block", co.nodes};
            return out;
        }
        nodes += co.nodes;
        l_remaining.erase(u);
        // consume: connector interior + block vertices leave the pool
        for (size_t i = k - 1; i < co.path->seq.size(); ++i) {
            ext.push_back(co.path->seq[i]);
            consume(co.path->seq[i]);
        }
        for (size_t i = k - 1; i < block.size(); ++i) {
            ext.push_back(block[i]);
            consume(block[i]);
        }
        w_side = !w_side;
    }

    // assemble the open path: v_ext reversed + p_almost + w_ext
    std::vector<int> open_seq(v_ext.rbegin(), v_ext.rend());
    open_seq.insert(open_seq.end(), p_almost.seq.begin(), p_almost.seq.end());
    open_seq.insert(open_seq.end(), w_ext.begin(), w_ext.end());

    // close the cycle through what remains of R
    std::vector<int> tail(open_seq.end() - (k - 1), open_seq.end());
    std::vector<int> head_rev(open_seq.begin(), open_seq.begin() + (k - 1));
    std::reverse(head_rev.begin(), head_rev.end());
    auto co = connect(g, tail, head_rev, avoid_for_connect(), {}, cfg.connector_max_len,
                      cfg.node_cap);
    if (!co.path) {
        out.failure = PipelineFailure{"cover", "closing connector failed", co.nodes};
        return out;
    }
    for (size_t i = k - 1; i + (k - 1) < co.path->seq.size(); ++i) {
        open_seq.push_back(co.path->seq[i]);
        consume(co.path->seq[i]);
    }

    // R' = reused reservoir vertices; re-route the reservoir path off them
    std::vector<int> reused;
    for (int v : r)
        if (!r_free.count(v)) reused.push_back(v);
    out.reused_reservoir = reused;
    auto witness = pres.witness_from_decomposition(reused);
    if (!witness) {
        out.failure = PipelineFailure{"absorb", "reservoir witness unavailable", 0};
        return out;
    }
    // locate the base segment inside the assembled cycle and splice
    const auto& base = pres.base.seq;
    auto it = std::search(open_seq.begin(), open_seq.end(), base.begin(), base.end());
    if (it == open_seq.end()) {
        out.failure = PipelineFailure{"absorb", "reservoir base not contiguous in cycle", 0};
        return out;
    }
    std::vector<int> cyc(open_seq.begin(), it);
    cyc.insert(cyc.end(), witness->seq.begin(), witness->seq.end());
    cyc.insert(cyc.end(), it + base.size(), open_seq.end());

    if (!is_tight_cycle(g, cyc)) {
        out.failure = PipelineFailure{"absorb", "assembled cycle failed verification", 0};
        return out;
    }
    StageLog log;
    log.stage = "cover";
    log.ok = true;
    log.vertices_used = static_cast<int>(v_ext.size() + w_ext.size());
    log.nodes = nodes;
    trace.stages.push_back(log);
    out.cycle = TightCycle{cyc};
    return out;
}

PipelineResult find_tight_hamilton(const Hypergraph& g, const PipelineConfig& cfg) {
    PipelineResult res;
    int k = g.k(), n = g.n();
    if (n <= k) throw degenerate_instance("find_tight_hamilton: requires n >= k+1");
    if (cfg.node_cap == 0 || cfg.stage_node_cap == 0 || cfg.connector_max_len <= 0)
        throw invalid_input("find_tight_hamilton: budgets must be positive");
    if (cfg.gamma <= 0 || cfg.gamma >= 0.5)
        throw invalid_input("find_tight_hamilton: gamma must lie in (0, 1/2)");

    // reservoir sizing: nu_res fraction, capped so the gadget-chain footprint
    // (about 3k vertices per unit) leaves room for the spanning stage
    int base_r = std::max(1, static_cast<int>(std::ceil(cfg.nu_res * n)));
    base_r = std::min(base_r, std::max(1, n / (3 * k)));
    for (int attempt = 0; attempt < std::max(1, cfg.reservoir_retries); ++attempt) {
        res.trace = PipelineTrace{};
        int r_size = std::max(1, base_r - attempt / 2);  // shrink slowly on retries
        // seeded reservoir sample; vertices whose gadget search fails are
        // swapped for the next pool candidate
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        Rng rng(mix_seed(cfg.seed, 0xE5, attempt));
        rng.shuffle(pool);
        std::vector<int> r(pool.begin(), pool.begin() + r_size);
        size_t next_candidate = r_size;
        std::sort(r.begin(), r.end());

        StageLog rlog;
        rlog.stage = "reservoir";
        ReservoirOutcome ro;
        for (int swap = 0; swap <= n; ++swap) {
            ro = build_reservoir_path(g, r, {}, cfg);
            if (ro.path) break;
            // a failure naming a vertex lets us swap that unit out
            if (!ro.failure || next_candidate >= pool.size()) break;
            auto pos = ro.failure->cause.find("vertex ");
            if (pos == std::string::npos) break;
            int bad = std::atoi(ro.failure->cause.c_str() + pos + 7);
            auto it = std::find(r.begin(), r.end(), bad);
            if (it == r.end()) break;
            r.erase(it);
            r.push_back(pool[next_candidate++]);
            std::sort(r.begin(), r.end());
        }
        if (!ro.path) {
            rlog.ok = false;
            rlog.detail = ro.failure ? ro.failure->cause : "unknown";
            res.trace.stages.push_back(rlog);
            res.failure = ro.failure;
            continue;
        }
        r = ro.path->reservoir;
        rlog.ok = true;
        rlog.vertices_used = static_cast<int>(ro.path->base.seq.size());
        res.trace.stages.push_back(rlog);
        res.trace.vertex_sets["reservoir_base"] = ro.path->base.seq;
        res.trace.vertex_sets["reservoir_set"] = r;

        // pair each extension attempt with a closing attempt: different
        // restarts expose different path ends to the closing connector
        std::optional<PipelineFailure> last_fail;
        for (int etry = 0; etry <= cfg.extension_restarts; ++etry) {
            auto eo = extend_attempt(g, ro.path->base, r, nullptr, nullptr, cfg, etry);
            PipelineTrace trial_trace = res.trace;
            StageLog elog;
            elog.stage = "almost_spanning";
            elog.ok = true;
            elog.detail = eo.diagnostics;
            elog.vertices_used = static_cast<int>(eo.path.seq.size());
            trial_trace.stages.push_back(elog);
            {
                std::vector<int> ext;
                std::set<int> base_set(ro.path->base.seq.begin(), ro.path->base.seq.end());
                for (int v : eo.path.seq)
                    if (!base_set.count(v)) ext.push_back(v);
                trial_trace.vertex_sets["almost_extension"] = ext;
            }
            auto co = cover_and_close(g, *ro.path, eo.path, eo.leftover, cfg, trial_trace);
            if (co.cycle) {
                res.trace = trial_trace;
                res.cycle = co.cycle;
                res.verified = true;
                StageLog alog;
                alog.stage = "assembly";
                alog.ok = true;
                alog.detail = "reused " + std::to_string(co.reused_reservoir.size()) +
                              " reservoir vertices";
                res.trace.stages.push_back(alog);
                res.failure.reset();
                return res;
            }
            last_fail = co.failure;
        }
        res.failure = last_fail;
        StageLog flog;
        flog.stage = last_fail ? last_fail->stage : "cover";
        flog.ok = false;
        flog.detail = last_fail ? last_fail->cause : "unknown";
        res.trace.stages.push_back(flog);
    }
    if (!res.failure) res.failure = PipelineFailure{"pipeline", "all attempts exhausted", 0};
    return res;
}

}  // namespace trl
