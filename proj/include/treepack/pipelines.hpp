#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treepack/furer_raghavachari.hpp"
#include "treepack/mwu_solver.hpp"
#include "treepack/sparsify.hpp"

namespace treepack {

struct DegreeEstimate {
    int bound = 0;             // smallest B the solver accepts
    int solver_calls = 0;
    MwuResult solution;        // the accepted solve at `bound`
};

// Binary search over uniform degree bounds in [2, n-1]; B* is at least the
// returned value minus the solver slack.
DegreeEstimate estimate_min_degree(const Graph& g, double eps, std::uint64_t seed);

struct BdstReport {
    int estimated_bound = 0;          // B from the LP (uniform mode)
    int guarantee = 0;                // ceil((1 + 7 eps) B) + 2 (uniform mode)
    int max_degree = 0;
    int max_excess = 0;               // nonuniform: max_v deg(v) - B_v
    int attempts = 0;                 // sparsify attempts (at most 2)
    int sparse_edges = 0;
    int reduce_calls = 0;
    SparsifyReport sparsify;
    VerifyReport verify;
    DegreeWitness witness;            // in the sparsified graph
};

struct BdstResult {
    SpanningTree tree;                // in the input graph's edge ids
    BdstReport report;
};

// LP, sparsification, then local search on the sparse graph. When `bounds`
// is empty the uniform minimum bound is estimated first. Throws
// InvalidInput for infeasible bounds and std::runtime_error when both
// sparsification attempts fail.
BdstResult bdst_sparse_pipeline(const Graph& g, const std::vector<int>& bounds, double eps, std::uint64_t seed);

// Trials used by the crossing pipeline when none are requested: ceil(4 ln(n) / eps).
int default_crossing_trials(int n, double eps);

struct TrialOutcome {
    int trial = 0;
    double cost = 0;
    double max_ratio = 0;      // max_i (A 1_T)_i / b_i
    double max_excess = 0;     // max_i (A 1_T)_i - b_i
    bool within_cost = true;   // cost <= (1 + eps) LP cost
};

struct CrossingReport {
    int trials = 0;
    double lp_cost = 0;
    bool used_costs = false;
    int passing_trials = 0;    // trials within the cost filter
    TrialOutcome best;
    MwuReport solver;
    MincostReport mincost;
};

struct CrossingResult {
    SolveStatus status = SolveStatus::Infeasible;
    SpanningTree tree;
    std::vector<TrialOutcome> outcomes;
    CrossingReport report;
};

// Solves the LP (with costs when use_costs), then rounds the decomposition
// `trials` times with independent streams and keeps the tree of smallest
// violation among those within the cost filter. jobs > 1 runs trials on
// threads; the result does not depend on jobs.
CrossingResult crossing_pipeline(const Graph& g, const ConstraintSystem& cs, bool use_costs, double eps,
                                 std::uint64_t seed, int trials = 0, int jobs = 1);

}  // namespace treepack
