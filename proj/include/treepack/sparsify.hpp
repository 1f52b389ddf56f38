#pragma once

#include <cstdint>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/mwu_solver.hpp"

namespace treepack {

// alpha_e = min(1, kSparsifyConstant * ln(k + m) / eps^2 * x_e)
inline constexpr double kSparsifyConstant = 36.0;

struct SparsifyReport {
    double eps = 0;
    double log_factor = 0;          // ln(k + m)
    int original_edges = 0;
    int kept_edges = 0;
    double expected_kept = 0;       // sum of alpha_e
    double variance_kept = 0;       // sum of alpha_e (1 - alpha_e)
    int forced_edges = 0;           // edges with alpha_e = 1
    bool connected = false;
};

struct SparsifyResult {
    Graph subgraph;                      // same vertices, kept edges renumbered
    std::vector<EdgeId> original_ids;    // subgraph edge i is original edge original_ids[i]
    ConstraintSystem constraints;        // rows restricted to the kept edges
    SparsifyReport report;
};

double keep_probability(double x_e, int k, int m, double eps);

SparsifyResult sparsify(const Graph& g, const ConstraintSystem& cs, const FractionalEdgeVector& x, double eps,
                        std::uint64_t seed);

struct VerifyReport {
    bool feasible = false;
    bool connected = false;
    double scale = 0;             // bounds were multiplied by this (1 + 3 eps)
    double max_violation = 0;     // of the re-solved y against the scaled rows
    MwuReport solver;
};

// Re-solves the packing LP on the sparsified graph with bounds (1 + 3 eps) b.
VerifyReport verify_sparsified(const SparsifyResult& s, double eps, std::uint64_t seed);

}  // namespace treepack
