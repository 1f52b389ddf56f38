#pragma once

#include <cstdint>

#include "treepack/decomposition.hpp"
#include "treepack/mwu_solver.hpp"

namespace treepack {

// Support entries below this are rejected as numerically meaningless.
inline constexpr double kMinSupportValue = 1e-6;

enum class DecomposeStatus { Decomposed, NotInPolytope };

struct DecomposeResult {
    DecomposeStatus status = DecomposeStatus::NotInPolytope;
    ImplicitDecomposition decomposition;
    FractionalEdgeVector marginals;  // z, with z <= (1 + c eps) x
    MwuReport report;

    bool ok() const { return status == DecomposeStatus::Decomposed; }
};

// Writes x (a point near the spanning tree polytope) as a convex combination
// of spanning trees of its support, via the MWU solver with one capacity row
// per support edge.
DecomposeResult implicit_decompose(const Graph& g, const FractionalEdgeVector& x, double eps, std::uint64_t seed);

}  // namespace treepack
