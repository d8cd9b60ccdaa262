#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trl {

using Rational = boost::multiprecision::cpp_rational;

// --- generic packing LP ------------------------------------------------------
// maximise sum x_e subject to (incidence) x <= w, x >= 0. Solved by dense
// tableau simplex with Bland's rule, so pivoting is deterministic and finite;
// exact rationals below the edge-count threshold, long double above.
struct PackingLp {
    int num_items = 0;                        // rows (vertices)
    std::vector<std::vector<int>> columns;    // per column: covered rows
    std::vector<Rational> capacity;           // w, size num_items
};

struct PackingSolution {
    std::vector<Rational> x;      // per column
    std::vector<Rational> dual;   // per row, clamped into [0,1]
    Rational objective = 0;
    bool exact = true;            // false on the floating-point path
};

inline constexpr size_t kExactLpColumnCap = 10'000;

PackingSolution solve_packing_lp(const PackingLp& lp);

// --- the m-vertex weighted complex ------------------------------------------

struct WeightedComplex {
    int m = 0;                                           // vertices 0..m-1
    int k = 2;
    std::vector<std::vector<std::vector<int>>> layers;   // layers[i] = i-edges, i = 1..k
    std::vector<double> w;                               // weights in [0,1]

    const std::vector<std::vector<int>>& layer(int i) const { return layers.at(i); }
    std::optional<std::string> validate() const;         // down-closure, weight range

    std::string to_json() const;
    static WeightedComplex from_json(const std::string& text);
};

struct FractionalMatching {
    std::vector<std::vector<int>> edges;  // the k-edges, canonical order
    std::vector<Rational> weight;         // aligned with edges
    Rational objective = 0;
    std::vector<Rational> dual;           // optimal dual, per vertex
    bool exact = true;

    std::string to_json() const;
};

// Optimal fractional matching: max sum w*(e) s.t. sum_{e ni v} w*(e) <= w(v).
// Deterministic tie-breaking via lexicographic edge order + Bland's rule.
// No k-edges yields the zero matching.
FractionalMatching fractional_matching(const WeightedComplex& h);

struct GuaranteeReport {
    bool h_vertices = false;      // >= (1-eps)m 1-edges
    bool h_middle = false;        // each i-edge (i <= k-2) in >= (1-eps)m (i+1)-edges
    bool h_top = false;           // each (k-1)-edge in >= (1/2+gamma)m k-edges
    bool h_weight = false;        // sum w >= (1-gamma)m
    std::string violation;        // which hypothesis failed, empty if none
    bool objective_ok = false;    // objective >= (sum w - eps m)/k
    bool hypotheses_ok() const { return h_vertices && h_middle && h_top && h_weight; }
};

GuaranteeReport guarantee_check(const WeightedComplex& h, const FractionalMatching& result,
                                double eps, double gamma);

struct DualCertificate {
    std::vector<Rational> y;  // per vertex, in [0,1]
};

// Validates feasibility (sum_{v in e} y_v >= 1 per k-edge, rational) and
// returns sum y(v) w(v); throws with the violated edge otherwise.
Rational dual_certificate_bound(const WeightedComplex& h, const DualCertificate& y);

// --- cluster weights ---------------------------------------------------------

struct OmegaResult {
    std::vector<double> omega;
    bool clamped = false;  // some weight was cut at 1
};

// omega(V_i) = 0 when |V_i \ covered| < 2 eta n / t, else
// (|V_i \ covered| - 2 eta n/t) / ((1 - nu_res) n/t), clamped into [0,1].
OmegaResult omega_weights(const std::vector<int>& cluster_sizes,
                          const std::vector<int>& covered_counts, double eta, double nu_res,
                          int n, int t);

// ceil(k (1-nu_res) (n/t) w*(g) / ell_conn) per positive-weight edge,
// in the matching's edge order.
std::vector<std::pair<std::vector<int>, long long>> edge_quotas(const FractionalMatching& m,
                                                                int k, int ell_conn,
                                                                double nu_res, int n, int t);

}  // namespace trl
