#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepack/decomposition.hpp"
#include "treepack/graph.hpp"

namespace treepack {

// Slack used to accept an MWU solution: Feasible iff the measured
// max_i (A y)_i / b_i is at most 1 + kFeasibilitySlack * eps.
inline constexpr double kFeasibilitySlack = 3.0;

enum class DynMstBackend { Naive };
enum class SolveStatus { Feasible, Infeasible };

struct MwuOptions {
    double eps = 0.1;
    std::uint64_t seed = 1;
    DynMstBackend backend = DynMstBackend::Naive;
    // Recompute gamma, the length sandwich and the MST from scratch every
    // iteration and throw InternalError on mismatch. Slow.
    bool debug_checks = false;
    // 0 selects an automatic cap well above the theoretical iteration bound.
    std::int64_t max_iterations = 0;
};

struct MwuReport {
    std::int64_t iterations = 0;
    std::int64_t weight_updates = 0;      // sum over rows of update counts
    std::int64_t max_row_updates = 0;     // largest update count of a single row
    std::int64_t length_updates = 0;      // rebuilds of the lazy lengths
    std::int64_t tree_swaps = 0;
    std::int64_t renormalizations = 0;
    int rows = 0;
    int edges = 0;
    int trees = 0;                        // h
    std::size_t encoding_size = 0;        // sum |E_i| + |E_i'|
    double eps = 0;
    double max_violation = 0;             // max_i (A y)_i / b_i of the returned y
    double measured_c = 0;                // max(0, max_violation - 1) / eps
    double slack_c = kFeasibilitySlack;
    double packing_value = 0;             // 1 / max_violation
    double iteration_bound = 0;           // 16 k ln k / eps^2
    bool certified_infeasible = false;    // Lagrangian certificate found
    bool hit_iteration_cap = false;
    double wall_ms = 0;
};

struct MwuResult {
    SolveStatus status = SolveStatus::Infeasible;
    ImplicitDecomposition decomposition;  // meaningful when Feasible
    FractionalEdgeVector marginals;
    MwuReport report;

    bool feasible() const { return status == SolveStatus::Feasible; }
};

// Decides whether some convex combination y of spanning trees satisfies
// A y <= (1 + c eps) b. Feasible results carry the combination.
MwuResult solve_feasibility(const Graph& g, const ConstraintSystem& cs, const MwuOptions& opts);

// Same, over the spanning trees of the subgraph formed by active edges,
// with rows given directly. Bounds may be any positive value.
MwuResult solve_packing(const Graph& g, const std::vector<ConstraintRow>& rows, const std::vector<char>& active,
                        const MwuOptions& opts);

struct MincostReport {
    int solver_calls = 0;
    double prefix_cost = 0;    // c_i of the cheapest feasible prefix
    double cost_bound = 0;     // final budget B
    double lp_cost = 0;        // c^T y of the returned y
    std::int64_t iterations = 0;
    double max_violation = 0;  // with respect to the original rows
    double wall_ms = 0;
};

struct MincostResult {
    SolveStatus status = SolveStatus::Infeasible;
    ImplicitDecomposition decomposition;
    FractionalEdgeVector marginals;
    MincostReport report;

    bool feasible() const { return status == SolveStatus::Feasible; }
};

MincostResult solve_mincost(const Graph& g, const ConstraintSystem& cs, const MwuOptions& opts);

}  // namespace treepack
