#include <algorithm>
#include <set>

#include "trl/pipeline.hpp"

namespace trl {

namespace {

// chain pieces: plain vertex runs and gadget interiors (the latter carry the
// skip variant). Flattened concatenation is the base path.
struct Piece {
    std::vector<int> seq;
    bool is_gadget = false;
    int u = -1;
    std::vector<int> without_interior;  // gadget interiors only
};

void reverse_piece(Piece& p) {
    std::reverse(p.seq.begin(), p.seq.end());
    std::reverse(p.without_interior.begin(), p.without_interior.end());
}

struct Chain {
    std::vector<Piece> pieces;

    std::vector<int> flat() const {
        std::vector<int> s;
        for (const auto& p : pieces) s.insert(s.end(), p.seq.begin(), p.seq.end());
        return s;
    }
    std::vector<int> tail_tuple(int k) const {
        auto s = flat();
        return {s.end() - (k - 1), s.end()};
    }
    void reverse() {
        std::reverse(pieces.begin(), pieces.end());
        for (auto& p : pieces) reverse_piece(p);
    }
};

}  // namespace

ReservoirOutcome build_reservoir_path(const Hypergraph& g, const std::vector<int>& r,
                                      const std::vector<int>& forbidden,
                                      const PipelineConfig& cfg) {
    int k = g.k();
    ReservoirOutcome out;
    std::vector<int> reservoir = r;
    std::sort(reservoir.begin(), reservoir.end());
    for (int u : reservoir)
        for (int f : forbidden)
            if (u == f) throw invalid_input("build_reservoir_path: R meets forbidden");

    std::set<int> avoid(forbidden.begin(), forbidden.end());
    std::set<int> pending(reservoir.begin(), reservoir.end());

    auto avoid_list = [&](int except = -1) {
        std::vector<int> v(avoid.begin(), avoid.end());
        for (int u : pending)
            if (u != except) v.push_back(u);
        return v;
    };

    Chain chain;
    if (reservoir.empty()) {
        // degenerate: a bare tuple from the first edge clear of everything
        for (const auto& e : g.edges()) {
            bool ok = true;
            for (int v : e)
                if (avoid.count(v)) ok = false;
            if (!ok) continue;
            Piece p;
            p.seq.assign(e.begin(), e.begin() + (k - 1));
            chain.pieces.push_back(p);
            break;
        }
        if (chain.pieces.empty()) {
            out.failure = PipelineFailure{"reservoir", "no clear starting tuple", 0};
            return out;
        }
        ReservoirPath rp;
        rp.base.seq = chain.flat();
        rp.decomposition = ReservoirPath::Decomposition{k, {}};
        out.path = rp;
        return out;
    }

    bool first = true;
    int index = 0;
    for (int u : reservoir) {
        ++index;
        auto block = avoid_list(u);
        auto ao = build_absorber(g, u, block, cfg);
        if (!ao.gadget) {
            out.failure = PipelineFailure{
                "reservoir", "absorber search failed at vertex " + std::to_string(u), ao.nodes};
            return out;
        }
        const AbsorberGadget& gad = *ao.gadget;
        pending.erase(u);
        for (int v : gad.vertices()) avoid.insert(v);

        std::vector<int> head = gad.path_with.head_tuple(k);
        Piece interior;
        interior.is_gadget = true;
        interior.u = u;
        interior.seq.assign(gad.path_with.seq.begin() + (k - 1),
                            gad.path_with.seq.end() - (k - 1));
        interior.without_interior.assign(gad.path_without.seq.begin() + (k - 1),
                                         gad.path_without.seq.end() - (k - 1));
        Piece head_piece;
        head_piece.seq = head;
        Piece tail_piece;
        tail_piece.seq = gad.path_with.tail_tuple(k);

        if (first) {
            first = false;
            chain.pieces = {head_piece, interior, tail_piece};
            continue;
        }
        // alternate the end being extended
        if (index % 2 == 0) chain.reverse();
        std::vector<int> t = chain.tail_tuple(k);
        std::vector<int> target(head.rbegin(), head.rend());
        auto co = connect(g, t, target, avoid_list(), {}, cfg.connector_max_len, cfg.node_cap);
        if (!co.path) {
            out.failure = PipelineFailure{
                "reservoir",
                std::string("connector failed at vertex ") + std::to_string(u) +
                    (co.budget_exhausted ? " (budget)" : ""),
                co.nodes};
            return out;
        }
        for (int v : co.path->seq) avoid.insert(v);
        Piece conn;
        conn.seq.assign(co.path->seq.begin() + (k - 1), co.path->seq.end() - (k - 1));
        Piece head2;
        head2.seq = head;
        chain.pieces.push_back(conn);
        chain.pieces.push_back(head2);
        chain.pieces.push_back(interior);
        chain.pieces.push_back(tail_piece);
    }

    ReservoirPath rp;
    rp.base.seq = chain.flat();
    rp.reservoir = reservoir;
    ReservoirPath::Decomposition dec;
    dec.k = k;
    size_t offset = 0;
    for (const auto& p : chain.pieces) {
        if (p.is_gadget) {
            ReservoirPath::GadgetSplice sp;
            sp.u = p.u;
            sp.begin = offset;
            sp.end = offset + p.seq.size();
            sp.without_interior = p.without_interior;
            dec.splices.push_back(sp);
        }
        offset += p.seq.size();
    }
    std::sort(dec.splices.begin(), dec.splices.end(),
              [](const auto& a, const auto& b) { return a.begin < b.begin; });
    rp.decomposition = dec;
    if (!is_tight_path(g, rp.base.seq)) {
        out.failure = PipelineFailure{"reservoir", "assembled base is not a tight path", 0};
        return out;
    }
    out.path = rp;
    out.vertices_per_reservoir_unit =
        static_cast<double>(rp.base.seq.size()) / static_cast<double>(reservoir.size());
    return out;
}

}  // namespace trl
