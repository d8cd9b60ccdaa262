#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trl/hypergraph.hpp"
#include "trl/paths.hpp"

namespace trl {

struct PipelineConfig {
    double gamma = 0.1;
    double eps = 0.1;
    int goodness_ell = 1;
    int connector_max_len = 12;      // max new vertices per connection
    bool spiked_absorber = false;    // direct (2k-1)-vertex template by default
    int spiked_t = 2;                // spikes per side for the spiked template
    uint64_t node_cap = 2'000'000;   // per-search node budget
    uint64_t stage_node_cap = 50'000'000;
    double nu_res = 0.25;            // reservoir fraction
    int reservoir_retries = 16;      // resample R on failure
    int extension_restarts = 40;     // randomized restarts when extension stalls
    double cover_ratio = 0.34;       // require |L| <= cover_ratio * |R|
    uint64_t seed = 0;
};

struct StageLog {
    std::string stage;
    bool ok = false;
    std::string detail;
    int vertices_used = 0;
    uint64_t nodes = 0;
};

struct PipelineTrace {
    std::vector<StageLog> stages;
    std::string first_cover_side = "w";  // the alternation starts on the w-side
    std::map<std::string, std::vector<int>> vertex_sets;  // per-stage vertex ledger

    std::string to_json() const;
};

struct PipelineFailure {
    std::string stage;
    std::string cause;
    uint64_t nodes = 0;
};

struct PipelineResult {
    std::optional<TightCycle> cycle;
    std::optional<PipelineFailure> failure;
    PipelineTrace trace;
    bool verified = false;
};

// --- connect -----------------------------------------------------------------

struct ConnectOutcome {
    std::optional<TightPath> path;   // starts with x, ends with reverse-read of y
    bool budget_exhausted = false;
    uint64_t nodes = 0;
};

// Bidirectional iterative-deepening search over (k-1)-window states. Interior
// vertices avoid S, S', x and y. max_len bounds the number of interior
// vertices; expansion order is ascending, so results are deterministic.
ConnectOutcome connect(const Hypergraph& g, std::span<const int> x, std::span<const int> y,
                       const std::vector<int>& s, const std::vector<int>& s2, int max_len,
                       uint64_t node_cap = 2'000'000);

// --- absorbers ---------------------------------------------------------------

struct AbsorberOutcome {
    std::optional<AbsorberGadget> gadget;
    bool budget_exhausted = false;
    uint64_t nodes = 0;
};

// Direct template: a (2k-1)-vertex sequence with u central whose k-windows
// are all edges both with and without u. Spiked template: two spike paths of
// t spikes joined at shared end tuples, interconnected via connect().
AbsorberOutcome build_absorber(const Hypergraph& g, int u, const std::vector<int>& forbidden,
                               const PipelineConfig& cfg);

struct ReservoirOutcome {
    std::optional<ReservoirPath> path;
    std::optional<PipelineFailure> failure;
    double vertices_per_reservoir_unit = 0;  // the constant c actually achieved
};

// One gadget per u in R, chained with connect() using alternating ends; the
// output satisfies verify_reservoir by construction (witnesses assembled from
// the decomposition).
ReservoirOutcome build_reservoir_path(const Hypergraph& g, const std::vector<int>& r,
                                      const std::vector<int>& forbidden,
                                      const PipelineConfig& cfg);

// --- extension and closing -----------------------------------------------------

struct ExtensionOutcome {
    TightPath path;
    std::vector<int> leftover;
    bool stalled = false;
    std::string diagnostics;
};

// Greedily extends p from its tail end over vertices outside `reserved`,
// honoring per-cluster quotas when supplied (cluster_of + quota per cluster,
// with ceil(ell/k) slack), with randomized restarts on stalls.
ExtensionOutcome extend_almost_spanning(const Hypergraph& g, const TightPath& p,
                                        const std::vector<int>& reserved,
                                        const std::vector<int>* cluster_of,
                                        const std::vector<long long>* quota,
                                        const PipelineConfig& cfg);

struct CoverOutcome {
    std::optional<TightCycle> cycle;
    std::optional<PipelineFailure> failure;
    std::vector<int> reused_reservoir;  // R'
};

// Absorbs the leftover vertices into the two ends through R (w-side first),
// closes the cycle through R, re-routes the reservoir path off the reused
// vertices and verifies the result. Never returns an unverified cycle.
CoverOutcome cover_and_close(const Hypergraph& g, const ReservoirPath& pres,
                             const TightPath& p_almost, const std::vector<int>& leftover,
                             const PipelineConfig& cfg, PipelineTrace& trace);

PipelineResult find_tight_hamilton(const Hypergraph& g, const PipelineConfig& cfg);

}  // namespace trl
