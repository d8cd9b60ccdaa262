#pragma once

#include <string>
#include <vector>

#include "trl/pipeline.hpp"
#include "trl/randmodel.hpp"

namespace trl {

struct ScanSpec {
    int k = 3;
    std::vector<int> n_values;
    std::vector<double> p_values;
    std::vector<double> gamma_values;
    std::vector<AdversarySpec> adversaries;
    int trials = 1;
    uint64_t base_seed = 0;
    uint64_t per_trial_time_cap_ms = 60'000;
    std::string out_csv;
    std::string out_svg;
    std::string checkpoint;
    int dp_cap = 14;
    bool wall_timing = false;  // when off, the ms column is 0 and reruns are byte-identical
    PipelineConfig pipeline;

    static ScanSpec from_json(const std::string& text);
    std::string to_json() const;
};

struct ScanRecord {
    int k = 0, n = 0;
    double p = 0, gamma = 0;
    std::string adversary;
    int trial = 0;
    uint64_t seed = 0;
    int min_codegree = 0;
    std::string outcome;    // "cycle" or "fail"
    std::string stage;      // failing stage or "-"
    std::string dp_verdict; // "true", "false" or "-"
    long long ms = 0;

    std::string csv_row() const;
    static ScanRecord parse_csv_row(const std::string& line);
};

inline constexpr const char* kScanCsvHeader =
    "k,n,p,gamma,adversary,trial,seed,min_codegree,outcome,stage,dp_verdict,ms";

struct ScanResult {
    std::vector<ScanRecord> records;
    int cells = 0;
};

// Runs the grid; trial-parallel with results merged by trial index so the
// CSV is schedule-independent. Existing rows in out_csv (plus the checkpoint
// file) let interrupted scans resume where they stopped.
ScanResult run_scan(const ScanSpec& spec);

// rect-grid heat map of success rate over (p, adversary); one panel per
// (n, gamma) combination
std::string scan_svg(const ScanSpec& spec, const std::vector<ScanRecord>& records);

}  // namespace trl
