#pragma once

#include <string>
#include <variant>
#include <vector>

#include "trl/hypergraph.hpp"

namespace trl {

struct GnpParams {
    int n = 0;
    int k = 2;
    double p = 0.0;
    uint64_t seed = 0;
};

// One uniform variate per k-set, drawn in colex order, so identical params
// give identical samples on every platform.
Hypergraph sample_gnp(const GnpParams& params);

// Adversaries acting on a host graph. All outputs are edge-subsets of the
// input except the repair step, which only re-adds previously deleted edges.
struct ParityAdversary {
    std::vector<int> a;  // vertex set A
    bool keep_odd = true;
};
struct RandomThinning {
    double q = 0.0;  // independent deletion probability
};
struct CodegreeFloorRepair {
    double q = 0.0;
    int target = 0;  // repair any (k-1)-set whose degree fell below this
};
using AdversarySpec = std::variant<ParityAdversary, RandomThinning, CodegreeFloorRepair>;

struct AdversaryResult {
    Hypergraph graph;
    bool ok = true;  // false when a floor target was unreachable
    // (k-1)-sets whose degree stayed below target even after re-adding
    // everything deleted there
    std::vector<std::vector<int>> unreachable;
};

AdversaryResult apply_adversary(const Hypergraph& g, const AdversarySpec& spec, uint64_t seed);

// JSON wire format {kind, params}; see External Interfaces.
AdversarySpec adversary_from_json(const std::string& json_text);
std::string adversary_to_json(const AdversarySpec& spec);
std::string adversary_name(const AdversarySpec& spec);

}  // namespace trl
