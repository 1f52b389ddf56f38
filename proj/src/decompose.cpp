#include "treepack/decompose.hpp"

#include <string>

namespace treepack {

DecomposeResult implicit_decompose(const Graph& g, const FractionalEdgeVector& x, double eps, std::uint64_t seed) {
    if (x.size() != g.num_edges()) throw InvalidInput("fractional vector does not match graph");
    std::vector<char> active(g.num_edges(), 0);
    std::vector<ConstraintRow> rows;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        double v = x[e];
        if (v <= 0) continue;
        if (v < kMinSupportValue)
            throw InvalidInput("support value " + std::to_string(v) + " on edge " + std::to_string(e) + " is below 1e-6");
        active[e] = 1;
        rows.push_back(ConstraintRow{v, {{e, 1.0}}});
    }
    MwuOptions opts;
    opts.eps = eps;
    opts.seed = seed;
    MwuResult r = solve_packing(g, rows, active, opts);
    DecomposeResult out;
    out.report = r.report;
    if (r.feasible()) {
        out.status = DecomposeStatus::Decomposed;
        out.decomposition = std::move(r.decomposition);
        out.marginals = std::move(r.marginals);
    }
    return out;
}

}  // namespace treepack
