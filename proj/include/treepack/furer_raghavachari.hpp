#pragma once

#include <span>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

// Blocked set W of a final local search state. Every spanning tree has max
// degree at least ceil((c(G - W) + |W| - 1) / |W|).
struct DegreeWitness {
    std::vector<VertexId> blocked;  // sorted
    int components = 0;             // components of G - W
    int lower_bound = 0;
};

// Components of G - W and the resulting lower bound, computed from scratch.
DegreeWitness make_witness(const Graph& g, std::vector<VertexId> blocked);

enum class ReduceStatus { Improved, Witness };

struct ReduceResult {
    ReduceStatus status = ReduceStatus::Witness;
    SpanningTree tree;      // improved tree, or the input when a witness is returned
    DegreeWitness witness;  // meaningful for Witness
    int max_degree = 0;     // of the input, with offsets
};

// One round of local search on the (virtual) degrees deg_T(v) + offset[v].
// Either lowers (max degree, number of vertices attaining it)
// lexicographically, or certifies via a witness that no improvement of this
// kind exists.
ReduceResult fr_reduce(const Graph& g, const SpanningTree& t, std::span<const int> offset = {});

struct FrResult {
    SpanningTree tree;
    DegreeWitness witness;
    int reduce_calls = 0;
    int max_degree = 0;
};

// Spanning tree of max degree at most B* + 1, with the witness that proves it.
FrResult fr_min_degree(const Graph& g);

enum class NonuniformStatus { Tree, Infeasible };

struct NonuniformResult {
    NonuniformStatus status = NonuniformStatus::Infeasible;
    SpanningTree tree;        // deg_T(v) <= bounds[v] + 1 when status is Tree
    DegreeWitness witness;    // for Infeasible: c + |W| - 1 > sum_{w in W} bounds[w]
    int reduce_calls = 0;
    int max_excess = 0;       // max_v deg_T(v) - bounds[v]
};

// Per-vertex bounds 1 <= B_v <= n - 1.
NonuniformResult fr_nonuniform(const Graph& g, std::span<const int> bounds);

}  // namespace treepack
