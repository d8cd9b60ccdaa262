#include "trl/matchlp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "trl/util.hpp"

namespace trl {

namespace {

// dense tableau simplex, Bland's rule; Num is Rational or long double
template <class Num>
struct Simplex {
    int rows, cols;  // structural + slack columns
    std::vector<std::vector<Num>> tab;  // rows x (cols+1), last col = rhs
    std::vector<Num> obj;               // reduced-cost row, size cols+1
    std::vector<int> basis;             // per row: basic column

    static bool neg(const Num& v) {
        if constexpr (std::is_same_v<Num, Rational>) return v < 0;
        else return v < -1e-11L;
    }
    static bool pos(const Num& v) {
        if constexpr (std::is_same_v<Num, Rational>) return v > 0;
        else return v > 1e-11L;
    }

    void pivot(int pr, int pc) {
        Num inv = tab[pr][pc];
        for (auto& v : tab[pr]) v /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == pr) continue;
            Num f = tab[r][pc];
            if (f == 0) continue;
            for (int c = 0; c <= cols; ++c) tab[r][c] -= f * tab[pr][c];
        }
        Num f = obj[pc];
        if (f != 0)
            for (int c = 0; c <= cols; ++c) obj[c] -= f * tab[pr][c];
        basis[pr] = pc;
    }

    // returns false on unbounded (cannot happen for packing LPs)
    bool run() {
        while (true) {
            int pc = -1;
            for (int c = 0; c < cols; ++c) {
                if (neg(obj[c])) {
                    pc = c;
                    break;  // Bland: smallest index
                }
            }
            if (pc < 0) return true;
            int pr = -1;
            Num best{};
            for (int r = 0; r < rows; ++r) {
                if (!pos(tab[r][pc])) continue;
                Num ratio = tab[r][cols] / tab[r][pc];
                if (pr < 0 || ratio < best ||
                    (ratio == best && basis[r] < basis[pr])) {
                    pr = r;
                    best = ratio;
                }
            }
            if (pr < 0) return false;
            pivot(pr, pc);
        }
    }
};

template <class Num>
PackingSolution solve_with(const PackingLp& lp) {
    int m = lp.num_items;
    int n = static_cast<int>(lp.columns.size());
    Simplex<Num> s;
    s.rows = m;
    s.cols = n + m;
    s.tab.assign(m, std::vector<Num>(s.cols + 1, Num(0)));
    s.obj.assign(s.cols + 1, Num(0));
    for (int j = 0; j < n; ++j) {
        for (int r : lp.columns[j]) s.tab.at(r)[j] = Num(1);
        s.obj[j] = Num(-1);
    }
    for (int r = 0; r < m; ++r) {
        s.tab[r][n + r] = Num(1);
        if constexpr (std::is_same_v<Num, Rational>) {
            s.tab[r][s.cols] = lp.capacity[r];
        } else {
            s.tab[r][s.cols] = static_cast<Num>(lp.capacity[r].template convert_to<double>());
        }
    }
    s.basis.resize(m);
    for (int r = 0; r < m; ++r) s.basis[r] = n + r;
    if (!s.run()) throw std::runtime_error("packing LP unbounded");

    PackingSolution sol;
    sol.x.assign(n, Rational(0));
    for (int r = 0; r < m; ++r) {
        if (s.basis[r] < n) {
            if constexpr (std::is_same_v<Num, Rational>) {
                sol.x[s.basis[r]] = s.tab[r][s.cols];
            } else {
                sol.x[s.basis[r]] = Rational(static_cast<double>(s.tab[r][s.cols]));
            }
        }
    }
    sol.dual.assign(m, Rational(0));
    for (int r = 0; r < m; ++r) {
        Num y = s.obj[n + r];
        Rational yr;
        if constexpr (std::is_same_v<Num, Rational>) yr = y;
        else yr = Rational(static_cast<double>(y));
        if (yr < 0) yr = 0;
        if (yr > 1) yr = 1;
        sol.dual[r] = yr;
    }
    for (const auto& x : sol.x) sol.objective += x;
    sol.exact = std::is_same_v<Num, Rational>;
    return sol;
}

}  // namespace

PackingSolution solve_packing_lp(const PackingLp& lp) {
    for (const auto& c : lp.capacity)
        if (c < 0) throw invalid_input("solve_packing_lp: negative capacity");
    if (lp.columns.size() <= kExactLpColumnCap) return solve_with<Rational>(lp);
    return solve_with<long double>(lp);
}

std::optional<std::string> WeightedComplex::validate() const {
    if (m < 0) return "m negative";
    if (k < 2) return "k < 2";
    if (m < k) return "degenerate: m < k, no k-edge can exist";
    if (static_cast<int>(layers.size()) < k + 1) return "layers must cover 1..k";
    if (static_cast<int>(w.size()) != m) return "weight vector size != m";
    for (double x : w)
        if (x < 0 || x > 1) return "weight outside [0,1]";
    std::vector<std::set<std::vector<int>>> sets(k + 1);
    for (int i = 1; i <= k; ++i) {
        for (auto e : layers[i]) {
            if (static_cast<int>(e.size()) != i) return "edge arity mismatch in layer";
            std::sort(e.begin(), e.end());
            if (e.front() < 0 || e.back() >= m) return "vertex out of range";
            sets[i].insert(e);
        }
    }
    for (int i = 2; i <= k; ++i) {
        for (const auto& e : sets[i]) {
            std::vector<int> sub(i - 1);
            for (int omit = 0; omit < i; ++omit) {
                int idx = 0;
                for (int q = 0; q < i; ++q)
                    if (q != omit) sub[idx++] = e[q];
                if (!sets[i - 1].count(sub)) return "not down-closed";
            }
        }
    }
    return std::nullopt;
}

std::string WeightedComplex::to_json() const {
    nlohmann::ordered_json j;
    j["m"] = m;
    j["k"] = k;
    auto ls = nlohmann::ordered_json::array();
    for (int i = 1; i <= k && i < static_cast<int>(layers.size()); ++i) ls.push_back(layers[i]);
    j["layers"] = ls;
    j["w"] = w;
    return j.dump(2);
}

WeightedComplex WeightedComplex::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    WeightedComplex h;
    h.m = j.at("m").get<int>();
    h.k = j.at("k").get<int>();
    auto ls = j.at("layers");
    h.layers.resize(h.k + 1);
    for (int i = 1; i <= h.k; ++i)
        h.layers[i] = ls.at(i - 1).get<std::vector<std::vector<int>>>();
    h.w = j.at("w").get<std::vector<double>>();
    return h;
}

FractionalMatching fractional_matching(const WeightedComplex& h) {
    if (auto why = h.validate()) throw invalid_input("fractional_matching: " + *why);
    FractionalMatching out;
    out.edges = h.layer(h.k);
    for (auto& e : out.edges) std::sort(e.begin(), e.end());
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    if (out.edges.empty()) {
        out.dual.assign(h.m, Rational(0));
        return out;
    }
    PackingLp lp;
    lp.num_items = h.m;
    for (const auto& e : out.edges) lp.columns.push_back(e);
    for (int v = 0; v < h.m; ++v) lp.capacity.push_back(Rational(h.w[v]));
    auto sol = solve_packing_lp(lp);
    out.weight = sol.x;
    out.objective = sol.objective;
    out.dual = sol.dual;
    out.exact = sol.exact;
    return out;
}

std::string FractionalMatching::to_json() const {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (size_t i = 0; i < edges.size(); ++i) {
        nlohmann::ordered_json e;
        e["vertices"] = edges[i];
        e["weight"] = weight.empty() ? 0.0 : weight[i].convert_to<double>();
        arr.push_back(e);
    }
    j["edges"] = arr;
    j["objective"] = objective.convert_to<double>();
    return j.dump(2);
}

GuaranteeReport guarantee_check(const WeightedComplex& h, const FractionalMatching& result,
                                double eps, double gamma) {
    GuaranteeReport rep;
    double m = h.m;
    std::vector<std::set<std::vector<int>>> sets(h.k + 1);
    for (int i = 1; i <= h.k; ++i)
        for (auto e : h.layers[i]) {
            std::sort(e.begin(), e.end());
            sets[i].insert(e);
        }
    rep.h_vertices = static_cast<double>(sets[1].size()) >= (1 - eps) * m - 1e-9;
    if (!rep.h_vertices) rep.violation = "fewer than (1-eps)m 1-edges";
    rep.h_middle = true;
    for (int i = 1; i <= h.k - 2 && rep.h_middle; ++i) {
        for (const auto& e : sets[i]) {
            long long up = 0;
            for (const auto& f : sets[i + 1])
                if (std::includes(f.begin(), f.end(), e.begin(), e.end())) ++up;
            if (static_cast<double>(up) < (1 - eps) * m - 1e-9) {
                rep.h_middle = false;
                rep.violation = "an i-edge in fewer than (1-eps)m (i+1)-edges";
                break;
            }
        }
    }
    rep.h_top = true;
    for (const auto& e : sets[h.k - 1]) {
        long long up = 0;
        for (const auto& f : sets[h.k])
            if (std::includes(f.begin(), f.end(), e.begin(), e.end())) ++up;
        if (static_cast<double>(up) < (0.5 + gamma) * m - 1e-9) {
            rep.h_top = false;
            rep.violation = "a (k-1)-edge in fewer than (1/2+gamma)m k-edges";
            break;
        }
    }
    Rational sw(0);
    for (double x : h.w) sw += Rational(x);
    rep.h_weight = sw >= Rational(1 - gamma) * h.m - Rational(1, 1000000000);
    if (!rep.h_weight && rep.violation.empty()) rep.violation = "sum w below (1-gamma)m";
    Rational rhs = (sw - Rational(eps) * h.m) / h.k;
    rep.objective_ok = result.objective >= rhs;
    return rep;
}

Rational dual_certificate_bound(const WeightedComplex& h, const DualCertificate& cert) {
    if (static_cast<int>(cert.y.size()) != h.m)
        throw invalid_input("dual_certificate_bound: y size != m");
    for (const auto& y : cert.y)
        if (y < 0 || y > 1) throw invalid_input("dual_certificate_bound: y outside [0,1]");
    for (auto e : h.layer(h.k)) {
        Rational s(0);
        for (int v : e) s += cert.y[v];
        if (s < 1)
            throw invalid_input("dual_certificate_bound: infeasible at edge {" +
                                join_ints(e, ',') + "}");
    }
    Rational total(0);
    for (int v = 0; v < h.m; ++v) total += cert.y[v] * Rational(h.w[v]);
    return total;
}

OmegaResult omega_weights(const std::vector<int>& cluster_sizes,
                          const std::vector<int>& covered_counts, double eta, double nu_res,
                          int n, int t) {
    if (t == 0) throw invalid_input("omega_weights: t must be nonzero");
    if (cluster_sizes.size() != covered_counts.size())
        throw invalid_input("omega_weights: size mismatch");
    OmegaResult res;
    double floor_cut = 2.0 * eta * n / t;
    double denom = (1.0 - nu_res) * n / t;
    for (size_t i = 0; i < cluster_sizes.size(); ++i) {
        double free_count = cluster_sizes[i] - covered_counts[i];
        double w = 0.0;
        if (free_count >= floor_cut) {
            w = (free_count - floor_cut) / denom;
            if (w > 1.0) {
                w = 1.0;
                res.clamped = true;
            }
            if (w < 0.0) w = 0.0;
        }
        res.omega.push_back(w);
    }
    return res;
}

std::vector<std::pair<std::vector<int>, long long>> edge_quotas(const FractionalMatching& m,
                                                                int k, int ell_conn,
                                                                double nu_res, int n, int t) {
    if (ell_conn <= 0 || t <= 0) throw invalid_input("edge_quotas: bad parameters");
    std::vector<std::pair<std::vector<int>, long long>> out;
    for (size_t i = 0; i < m.edges.size(); ++i) {
        if (m.weight[i] <= 0) continue;
        Rational q = Rational(k) * (Rational(1) - Rational(nu_res)) * Rational(n, t) *
                     m.weight[i] / ell_conn;
        // ceil of a rational
        boost::multiprecision::cpp_int num = numerator(q), den = denominator(q);
        boost::multiprecision::cpp_int quot = num / den;
        if (quot * den < num) ++quot;
        out.emplace_back(m.edges[i], quot.convert_to<long long>());
    }
    return out;
}

}  // namespace trl
