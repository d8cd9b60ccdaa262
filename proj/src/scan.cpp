#include "trl/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "trl/dp.hpp"

namespace trl {

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

ScanSpec ScanSpec::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    ScanSpec s;
    s.k = j.value("k", 3);
    s.n_values = j.at("n").get<std::vector<int>>();
    s.p_values = j.at("p").get<std::vector<double>>();
    s.gamma_values = j.value("gamma", std::vector<double>{0.1});
    if (j.contains("adversaries")) {
        for (const auto& a : j.at("adversaries"))
            s.adversaries.push_back(adversary_from_json(a.dump()));
    }
    s.trials = j.value("trials", 1);
    s.base_seed = j.value("seed", 0ULL);
    s.per_trial_time_cap_ms = j.value("time_cap_ms", 60000ULL);
    s.out_csv = j.value("csv", std::string("scan.csv"));
    s.out_svg = j.value("svg", std::string());
    s.checkpoint = j.value("checkpoint", std::string());
    s.dp_cap = j.value("dp_cap", 14);
    s.wall_timing = j.value("wall_timing", false);
    if (j.contains("pipeline")) {
        const auto& pj = j.at("pipeline");
        s.pipeline.nu_res = pj.value("nu_res", s.pipeline.nu_res);
        s.pipeline.connector_max_len = pj.value("connector_max_len", s.pipeline.connector_max_len);
        s.pipeline.reservoir_retries = pj.value("reservoir_retries", s.pipeline.reservoir_retries);
        s.pipeline.extension_restarts =
            pj.value("extension_restarts", s.pipeline.extension_restarts);
        s.pipeline.spiked_absorber = pj.value("spiked_absorber", s.pipeline.spiked_absorber);
    }
    if (s.n_values.empty() || s.p_values.empty() || s.gamma_values.empty())
        throw invalid_input("scan spec: empty grid");
    if (s.trials < 1) throw invalid_input("scan spec: trials must be >= 1");
    return s;
}

std::string ScanSpec::to_json() const {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["n"] = n_values;
    j["p"] = p_values;
    j["gamma"] = gamma_values;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : adversaries)
        arr.push_back(nlohmann::ordered_json::parse(adversary_to_json(a)));
    j["adversaries"] = arr;
    j["trials"] = trials;
    j["seed"] = base_seed;
    j["time_cap_ms"] = per_trial_time_cap_ms;
    j["csv"] = out_csv;
    j["svg"] = out_svg;
    j["checkpoint"] = checkpoint;
    j["dp_cap"] = dp_cap;
    j["wall_timing"] = wall_timing;
    return j.dump(2);
}

std::string ScanRecord::csv_row() const {
    std::ostringstream os;
    os << k << ',' << n << ',' << fmt_double(p) << ',' << fmt_double(gamma) << ',' << adversary
       << ',' << trial << ',' << seed << ',' << min_codegree << ',' << outcome << ',' << stage
       << ',' << dp_verdict << ',' << ms;
    return os.str();
}

ScanRecord ScanRecord::parse_csv_row(const std::string& line) {
    ScanRecord r;
    std::istringstream is(line);
    std::string tok;
    auto next = [&]() {
        if (!std::getline(is, tok, ',')) throw invalid_input("bad CSV row: " + line);
        return tok;
    };
    r.k = std::stoi(next());
    r.n = std::stoi(next());
    r.p = std::stod(next());
    r.gamma = std::stod(next());
    r.adversary = next();
    r.trial = std::stoi(next());
    r.seed = std::stoull(next());
    r.min_codegree = std::stoi(next());
    r.outcome = next();
    r.stage = next();
    r.dp_verdict = next();
    r.ms = std::stoll(next());
    return r;
}

namespace {

struct Cell {
    int n;
    double p, gamma;
    size_t adv_index;  // index into spec.adversaries, SIZE_MAX = none
};

AdversarySpec materialize(const AdversarySpec& a, double gamma, double p, int n) {
    // a floor-repair target of 0 means "derive from the cell": ceil((1/2+gamma) p n)
    if (const auto* fr = std::get_if<CodegreeFloorRepair>(&a)) {
        if (fr->target == 0) {
            CodegreeFloorRepair out = *fr;
            out.target = static_cast<int>(std::ceil((0.5 + gamma) * p * n));
            return out;
        }
    }
    return a;
}

ScanRecord run_trial(const ScanSpec& spec, const Cell& cell, int trial) {
    ScanRecord rec;
    rec.k = spec.k;
    rec.n = cell.n;
    rec.p = cell.p;
    rec.gamma = cell.gamma;
    rec.trial = trial;
    rec.seed = mix_seed(spec.base_seed, cell.n,
                        static_cast<uint64_t>(cell.p * 1e9) ^
                            (static_cast<uint64_t>(cell.gamma * 1e9) << 1) ^ cell.adv_index,
                        static_cast<uint64_t>(trial));
    auto t0 = std::chrono::steady_clock::now();

    Hypergraph g = sample_gnp({cell.n, spec.k, cell.p, rec.seed});
    if (cell.adv_index != SIZE_MAX) {
        auto spec_a =
            materialize(spec.adversaries[cell.adv_index], cell.gamma, cell.p, cell.n);
        rec.adversary = adversary_name(spec_a);
        auto ar = apply_adversary(g, spec_a, mix_seed(rec.seed, 0xADFULL));
        g = ar.graph;
    } else {
        rec.adversary = "none";
    }
    rec.min_codegree = g.min_codegree();

    PipelineConfig cfg = spec.pipeline;
    cfg.seed = rec.seed;
    auto pr = find_tight_hamilton(g, cfg);
    if (pr.cycle) {
        rec.outcome = "cycle";
        rec.stage = "-";
    } else {
        rec.outcome = "fail";
        rec.stage = pr.failure ? pr.failure->stage : "unknown";
    }
    rec.dp_verdict = "-";
    if (cell.n <= spec.dp_cap) {
        DpOptions opts;
        opts.vertex_cap = spec.dp_cap;
        rec.dp_verdict = exact_tight_ham(g, opts).exists ? "true" : "false";
    }
    if (spec.wall_timing) {
        auto t1 = std::chrono::steady_clock::now();
        rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    return rec;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << content;
    }
    std::rename(tmp.c_str(), path.c_str());
}

}  // namespace

ScanResult run_scan(const ScanSpec& spec) {
    std::vector<Cell> cells;
    for (int n : spec.n_values)
        for (double p : spec.p_values)
            for (double gamma : spec.gamma_values) {
                if (spec.adversaries.empty()) {
                    cells.push_back({n, p, gamma, SIZE_MAX});
                } else {
                    for (size_t a = 0; a < spec.adversaries.size(); ++a)
                        cells.push_back({n, p, gamma, a});
                }
            }

    // resume: count rows already present
    size_t done = 0;
    std::vector<ScanRecord> existing;
    {
        std::ifstream in(spec.out_csv);
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (header) {
                header = false;
                continue;
            }
            if (line.empty()) continue;
            existing.push_back(ScanRecord::parse_csv_row(line));
        }
        done = existing.size();
    }

    ScanResult res;
    res.cells = static_cast<int>(cells.size());
    res.records = existing;

    std::ofstream csv;
    if (done == 0) {
        csv.open(spec.out_csv, std::ios::trunc);
        csv << kScanCsvHeader << '\n';
    } else {
        csv.open(spec.out_csv, std::ios::app);
    }

    size_t global_index = 0;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
        std::vector<ScanRecord> batch(spec.trials);
        std::vector<bool> need(spec.trials, false);
        for (int t = 0; t < spec.trials; ++t, ++global_index) need[t] = global_index >= done;
        bool any = false;
        for (int t = 0; t < spec.trials; ++t) any = any || need[t];
        if (!any) continue;
#pragma omp parallel for num_threads(thread_budget()) schedule(dynamic, 1)
        for (int t = 0; t < spec.trials; ++t) {
            if (!need[t]) continue;
            batch[t] = run_trial(spec, cells[ci], t);
        }
        for (int t = 0; t < spec.trials; ++t) {
            if (!need[t]) continue;
            csv << batch[t].csv_row() << '\n';
            res.records.push_back(batch[t]);
        }
        csv.flush();
        if (!spec.checkpoint.empty()) {
            nlohmann::ordered_json ck;
            ck["rows_done"] = res.records.size();
            atomic_write(spec.checkpoint, ck.dump());
        }
    }
    csv.close();

    if (!spec.out_svg.empty()) atomic_write(spec.out_svg, scan_svg(spec, res.records));
    return res;
}

std::string scan_svg(const ScanSpec& spec, const std::vector<ScanRecord>& records) {
    // panels per (n, gamma); rows = p, cols = adversary
    struct Key {
        int n;
        double gamma;
        bool operator<(const Key& o) const {
            return n != o.n ? n < o.n : gamma < o.gamma;
        }
    };
    std::vector<std::string> adv_names;
    for (const auto& a : spec.adversaries) adv_names.push_back(adversary_name(a));
    if (adv_names.empty()) adv_names.push_back("none");

    std::map<Key, std::map<std::pair<double, std::string>, std::pair<int, int>>> panels;
    for (const auto& r : records) {
        auto& cellstat = panels[{r.n, r.gamma}][{r.p, r.adversary}];
        ++cellstat.second;
        if (r.outcome == "cycle") ++cellstat.first;
    }
    const int cw = 64, ch = 28, left = 70, top = 40, gap = 40;
    int cols = static_cast<int>(adv_names.size());
    int rows = static_cast<int>(spec.p_values.size());
    int panel_w = left + cols * cw + 20;
    int panel_h = top + rows * ch + 30;
    int total_w = panel_w;
    int total_h = static_cast<int>(panels.size()) * (panel_h + gap) + 20;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\""
        << total_h << "\" font-family=\"monospace\" font-size=\"11\">\n";
    int py = 10;
    for (const auto& [key, grid] : panels) {
        svg << "<text x=\"10\" y=\"" << py + 14 << "\">k=" << spec.k << " n=" << key.n
            << " gamma=" << fmt_double(key.gamma) << " success rate</text>\n";
        for (int c = 0; c < cols; ++c) {
            svg << "<text x=\"" << left + c * cw + 4 << "\" y=\"" << py + 30
                << "\" font-size=\"9\">" << adv_names[c] << "</text>\n";
        }
        for (int r = 0; r < rows; ++r) {
            double p = spec.p_values[r];
            svg << "<text x=\"8\" y=\"" << py + top + r * ch + 18 << "\">p=" << fmt_double(p)
                << "</text>\n";
            for (int c = 0; c < cols; ++c) {
                auto it = grid.find({p, adv_names[c]});
                double rate = 0;
                int ntr = 0;
                if (it != grid.end() && it->second.second > 0) {
                    rate = static_cast<double>(it->second.first) / it->second.second;
                    ntr = it->second.second;
                }
                int red = static_cast<int>(255 * (1 - rate));
                int green = static_cast<int>(200 * rate + 40 * (1 - rate));
                svg << "<rect x=\"" << left + c * cw << "\" y=\"" << py + top + r * ch
                    << "\" width=\"" << cw - 2 << "\" height=\"" << ch - 2 << "\" fill=\"rgb("
                    << red << ',' << green << ",60)\"/>\n";
                std::ostringstream label;
                label.setf(std::ios::fixed);
                label.precision(2);
                label << rate;
                svg << "<text x=\"" << left + c * cw + 6 << "\" y=\"" << py + top + r * ch + 18
                    << "\">" << label.str() << (ntr ? "" : " -") << "</text>\n";
            }
        }
        py += panel_h + gap;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace trl
