#include "treepack/sparsify.hpp"

#include <algorithm>
#include <cmath>

namespace treepack {

double keep_probability(double x_e, int k, int m, double eps) {
    double l = std::log(static_cast<double>(std::max(2, k + m)));
    return std::min(1.0, kSparsifyConstant * l / (eps * eps) * x_e);
}

SparsifyResult sparsify(const Graph& g, const ConstraintSystem& cs, const FractionalEdgeVector& x, double eps,
                        std::uint64_t seed) {
    if (!(eps > 0 && eps < 1)) throw InvalidInput("eps must lie in (0, 1)");
    if (x.size() != g.num_edges()) throw InvalidInput("fractional vector does not match graph");
    if (cs.num_edges() != g.num_edges()) throw InvalidInput("constraint system does not match graph");
    Rng rng(seed);
    int m = g.num_edges(), k = cs.num_rows();
    SparsifyReport rep;
    rep.eps = eps;
    rep.log_factor = std::log(static_cast<double>(std::max(2, k + m)));
    rep.original_edges = m;
    std::vector<EdgeId> keep;
    for (EdgeId e = 0; e < m; ++e) {
        double a = keep_probability(x[e], k, m, eps);
        rep.expected_kept += a;
        rep.variance_kept += a * (1 - a);
        if (a >= 1.0) ++rep.forced_edges;
        // One draw per edge keeps streams aligned across inputs.
        double u = uniform01(rng);
        if (u < a) keep.push_back(e);
    }
    SparsifyResult out;
    out.subgraph = g.subgraph(keep, &out.original_ids);
    out.constraints = cs.restrict_to(keep);
    rep.kept_edges = static_cast<int>(keep.size());
    rep.connected = out.subgraph.connected();
    out.report = rep;
    return out;
}

VerifyReport verify_sparsified(const SparsifyResult& s, double eps, std::uint64_t seed) {
    VerifyReport v;
    v.scale = 1 + 3 * eps;
    v.connected = s.subgraph.connected();
    if (!v.connected) return v;
    MwuOptions opts;
    opts.eps = eps;
    opts.seed = seed;
    ConstraintSystem scaled = s.constraints.scaled_bounds(v.scale);
    MwuResult r = solve_feasibility(s.subgraph, scaled, opts);
    v.feasible = r.feasible();
    v.max_violation = r.report.max_violation;
    v.solver = r.report;
    return v;
}

}  // namespace treepack
