#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treepack/contractible_forest.hpp"
#include "treepack/decomposition.hpp"
#include "treepack/graph.hpp"

namespace treepack {

enum class MergeBackend { Naive };

struct WorkingDiff {
    std::vector<EdgeRef> removed;
    std::vector<EdgeRef> added;
};

// Oriented edge of g: a is the smaller endpoint.
EdgeRef edge_ref(const Graph& g, EdgeId e);

// Randomly merges two spanning trees of the same vertex set. While the trees
// differ, e is the smallest id in T1 \ T2 and e' the first edge of the T2-path
// from e's `a` endpoint to its `b` endpoint that reconnects T1 - e. With
// probability d1 / (d1 + d2) e is kept (T2 takes e in place of e'), otherwise
// T1 takes e' in place of e. Returns the edge ids of the common tree.
std::vector<EdgeId> merge_trees(std::span<const VertexId> vertices, double d1, std::span<const EdgeRef> t1, double d2,
                                std::span<const EdgeRef> t2, Rng& rng);

SpanningTree merge_bases(const Graph& g, double d1, const SpanningTree& t1, double d2, const SpanningTree& t2,
                         Rng& rng);

struct ShrinkResult {
    ContractibleForest forest;        // T with every edge outside all diffs contracted
    std::vector<WorkingDiff> diffs;   // renamed into the forest's vertices
    std::vector<EdgeId> contracted;   // ids of the contracted (common) edges
};

ShrinkResult shrink_intersection(const ContractibleForest& tree, std::span<const WorkingDiff> diffs);

// Swap rounding of the combination (tree, diffs, deltas) where deltas.size() == diffs.size() + 1.
// Returns the edge ids of the resulting tree.
std::vector<EdgeId> fast_swap(const ContractibleForest& tree, std::span<const WorkingDiff> diffs,
                              std::span<const double> deltas, Rng& rng);

SpanningTree fast_swap(const Graph& g, const ImplicitDecomposition& d, Rng& rng);

enum class RoundStatus { Tree, NotInPolytope };

struct RoundResult {
    RoundStatus status = RoundStatus::NotInPolytope;
    SpanningTree tree;
    ImplicitDecomposition decomposition;
};

// Decomposes x and rounds it to a spanning tree.
RoundResult swap_round_point(const Graph& g, const FractionalEdgeVector& x, double eps, std::uint64_t seed);

}  // namespace treepack
