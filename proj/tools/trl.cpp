// trl: sample/adversary/check/find/oracle/reservoir-demo/verify/scan
//
// Exit codes: 0 success, 1 malformed input, 2 validation failure,
// 3 budget/search failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trl/dp.hpp"
#include "trl/expand.hpp"
#include "trl/goodness.hpp"
#include "trl/hypergraph.hpp"
#include "trl/paths.hpp"
#include "trl/pipeline.hpp"
#include "trl/rainbow.hpp"
#include "trl/randmodel.hpp"
#include "trl/scan.hpp"

using namespace trl;

namespace {

Hypergraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    return Hypergraph::read_text(in);
}

void save_graph(const Hypergraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    g.write_text(out);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> load_cycle(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    std::vector<int> cyc;
    int v;
    while (in >> v) cyc.push_back(v);
    return cyc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tight Hamilton cycle workbench"};
    app.require_subcommand(1);

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "sample a binomial k-graph");
    int s_n = 20, s_k = 3;
    double s_p = 0.3;
    uint64_t s_seed = 1;
    std::string s_out = "graph.txt";
    sample->add_option("--n", s_n);
    sample->add_option("--k", s_k);
    sample->add_option("--p", s_p);
    sample->add_option("--seed", s_seed);
    sample->add_option("--out", s_out);

    // ---- adversary ----
    auto* adv = app.add_subcommand("adversary", "apply an adversary to a graph");
    std::string a_in = "graph.txt", a_out = "out.txt", a_spec;
    uint64_t a_seed = 1;
    adv->add_option("--in", a_in);
    adv->add_option("--out", a_out);
    adv->add_option("--adversary", a_spec, "JSON {kind, params}")->required();
    adv->add_option("--seed", a_seed);

    // ---- check ----
    auto* check = app.add_subcommand("check", "codegree / goodness / upper-reg checks");
    std::string c_what = "codegree", c_in = "graph.txt", c_set;
    double c_eps = 0.1, c_p = 0.3, c_eta = 0.1;
    int c_ell = 1, c_samples = 20;
    uint64_t c_seed = 1;
    check->add_option("what", c_what, "codegree|goodness|upper-reg")->required();
    check->add_option("--in", c_in);
    check->add_option("--set", c_set, "comma-separated vertex set S");
    check->add_option("--eps", c_eps);
    check->add_option("--p", c_p);
    check->add_option("--eta", c_eta);
    check->add_option("--ell", c_ell);
    check->add_option("--samples", c_samples);
    check->add_option("--seed", c_seed);

    // ---- find ----
    auto* find = app.add_subcommand("find", "run the reservoir pipeline");
    std::string f_in = "graph.txt", f_witness = "cycle.txt", f_trace;
    uint64_t f_seed = 1;
    double f_nu = 0.25;
    find->add_option("--in", f_in);
    find->add_option("--witness", f_witness);
    find->add_option("--trace", f_trace);
    find->add_option("--seed", f_seed);
    find->add_option("--nu-res", f_nu);

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "exact DP tight-Hamiltonicity");
    std::string o_in = "graph.txt", o_witness;
    int o_cap = 14;
    oracle->add_option("--in", o_in);
    oracle->add_option("--witness", o_witness);
    oracle->add_option("--cap", o_cap);

    // ---- reservoir-demo ----
    auto* rdemo = app.add_subcommand("reservoir-demo", "build + exhaustively verify a reservoir");
    std::string r_in, r_out = "reservoir.txt";
    int r_r = 4, r_n = 60;
    double r_p = 0.3, r_gamma = 0.1, r_q = 0.3;
    uint64_t r_seed = 1;
    rdemo->add_option("--in", r_in, "host graph (sampled when omitted)");
    rdemo->add_option("--n", r_n);
    rdemo->add_option("--p", r_p);
    rdemo->add_option("--gamma", r_gamma);
    rdemo->add_option("--q", r_q);
    rdemo->add_option("--r", r_r, "reservoir size");
    rdemo->add_option("--seed", r_seed);
    rdemo->add_option("--out", r_out);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "verify a cycle witness against a graph");
    std::string v_graph = "graph.txt", v_cycle = "cycle.txt";
    verify->add_option("--graph", v_graph);
    verify->add_option("--cycle", v_cycle);

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "Monte-Carlo phase scan");
    std::string sc_spec;
    scan->add_option("--spec", sc_spec, "scan spec JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sample) {
            Hypergraph g = sample_gnp({s_n, s_k, s_p, s_seed});
            save_graph(g, s_out);
            std::cout << "wrote " << s_out << " with " << g.num_edges() << " edges\n";
            return 0;
        }
        if (*adv) {
            Hypergraph g = load_graph(a_in);
            auto spec = adversary_from_json(a_spec);
            auto res = apply_adversary(g, spec, a_seed);
            save_graph(res.graph, a_out);
            std::cout << "wrote " << a_out << " with " << res.graph.num_edges() << " edges\n";
            if (!res.ok) {
                std::cout << "floor unreachable at " << res.unreachable.size() << " sets\n";
                return 2;
            }
            return 0;
        }
        if (*check) {
            Hypergraph g = load_graph(c_in);
            if (c_what == "codegree") {
                std::cout << g.min_codegree() << "\n";
                return 0;
            }
            std::vector<int> s;
            if (!c_set.empty()) {
                std::istringstream ss(c_set);
                std::string tok;
                while (std::getline(ss, tok, ',')) s.push_back(std::stoi(tok));
            }
            if (c_what == "goodness") {
                GoodnessParams gp{c_eps, c_p, c_ell};
                GoodnessOracle oracle_(g, gp);
                long long bad = oracle_.count_nongood(s);
                std::cout << bad << "\n";
                return 0;
            }
            if (c_what == "upper-reg") {
                auto rep = upper_reg_sample(g, c_p, c_eta, c_samples, c_seed);
                std::cout << (rep.violations ? "violated" : "no violation found") << " samples="
                          << rep.samples << " worst_margin=" << rep.worst_margin << "\n";
                return rep.violations ? 2 : 0;
            }
            std::cerr << "unknown check: " << c_what << "\n";
            return 1;
        }
        if (*find) {
            Hypergraph g = load_graph(f_in);
            PipelineConfig cfg;
            cfg.seed = f_seed;
            cfg.nu_res = f_nu;
            auto res = find_tight_hamilton(g, cfg);
            if (!f_trace.empty()) {
                std::ofstream out(f_trace, std::ios::trunc);
                out << res.trace.to_json() << "\n";
            }
            if (res.cycle) {
                std::ofstream out(f_witness, std::ios::trunc);
                for (size_t i = 0; i < res.cycle->cyc.size(); ++i)
                    out << res.cycle->cyc[i] << (i + 1 < res.cycle->cyc.size() ? " " : "\n");
                std::cout << "cycle found and verified; witness in " << f_witness << "\n";
                return 0;
            }
            std::cout << "failure stage=" << (res.failure ? res.failure->stage : "?")
                      << " cause=" << (res.failure ? res.failure->cause : "?") << "\n";
            return 3;
        }
        if (*oracle) {
            Hypergraph g = load_graph(o_in);
            DpOptions opts;
            opts.vertex_cap = o_cap;
            auto res = exact_tight_ham(g, opts);
            std::cout << (res.exists ? "true" : "false") << "\n";
            if (res.exists && !o_witness.empty()) {
                std::ofstream out(o_witness, std::ios::trunc);
                for (size_t i = 0; i < res.cycle.size(); ++i)
                    out << res.cycle[i] << (i + 1 < res.cycle.size() ? " " : "\n");
            }
            return 0;
        }
        if (*rdemo) {
            Hypergraph g = r_in.empty() ? sample_gnp({r_n, 3, r_p, r_seed}) : load_graph(r_in);
            if (r_in.empty()) {
                CodegreeFloorRepair fr;
                fr.q = r_q;
                fr.target = static_cast<int>(std::ceil((0.5 + r_gamma) * r_p * g.n()));
                g = apply_adversary(g, fr, mix_seed(r_seed, 0xADFULL)).graph;
            }
            std::vector<int> verts(g.n());
            for (int i = 0; i < g.n(); ++i) verts[i] = i;
            Rng rng(mix_seed(r_seed, 0xE5, 0));
            rng.shuffle(verts);
            std::vector<int> r(verts.begin(), verts.begin() + r_r);
            std::sort(r.begin(), r.end());
            PipelineConfig cfg;
            cfg.seed = r_seed;
            auto ro = build_reservoir_path(g, r, {}, cfg);
            if (!ro.path) {
                std::cout << "reservoir build failed: "
                          << (ro.failure ? ro.failure->cause : "?") << "\n";
                return 3;
            }
            ReservoirVerifyMode mode;
            auto vr = verify_reservoir(g, *ro.path, mode);
            std::ofstream out(r_out, std::ios::trunc);
            out << "base";
            for (int v : ro.path->base.seq) out << ' ' << v;
            out << "\nreservoir";
            for (int v : ro.path->reservoir) out << ' ' << v;
            out << "\nsubsets_checked " << vr.subsets_checked << "\nverified "
                << (vr.ok ? "true" : "false") << "\n";
            std::cout << "reservoir on " << ro.path->base.seq.size() << " vertices, |R|="
                      << r.size() << ", exhaustive subsets=" << vr.subsets_checked
                      << " verified=" << (vr.ok ? "true" : "false") << "\n";
            return vr.ok ? 0 : 2;
        }
        if (*verify) {
            Hypergraph g = load_graph(v_graph);
            auto cyc = load_cycle(v_cycle);
            bool ok = is_tight_cycle(g, cyc);
            std::cout << (ok ? "valid" : "invalid") << "\n";
            return ok ? 0 : 2;
        }
        if (*scan) {
            auto spec = ScanSpec::from_json(slurp(sc_spec));
            auto res = run_scan(spec);
            long long cycles = 0;
            for (const auto& r : res.records)
                if (r.outcome == "cycle") ++cycles;
            std::cout << "records=" << res.records.size() << " cycles=" << cycles << " csv="
                      << spec.out_csv << "\n";
            return 0;
        }
    } catch (const invalid_input& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const degenerate_instance& e) {
        std::cerr << "degenerate instance: " << e.what() << "\n";
        return 2;
    } catch (const cap_exceeded& e) {
        std::cerr << "budget/cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
