#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

struct TreeDiff {
    std::vector<EdgeId> removed;  // E_i: leaves the tree
    std::vector<EdgeId> added;    // E_i': enters the tree
};

// Convex combination of h spanning trees stored as a base tree and the
// h-1 edge exchanges that turn tree i into tree i+1.
struct ImplicitDecomposition {
    int n = 0;
    std::vector<EdgeId> base;        // sorted
    std::vector<double> deltas;      // size h
    std::vector<TreeDiff> diffs;     // size h-1

    int num_trees() const { return static_cast<int>(deltas.size()); }
    // Total number of edge ids over all diffs.
    std::size_t encoding_size() const;
    double delta_sum() const;

    // Throws InvalidInput naming the offending step unless every replayed
    // tree is a spanning tree of g and coefficients are positive.
    void validate(const Graph& g) const;

    // Explicit trees; O(n h).
    std::vector<std::vector<EdgeId>> expand() const;

    // sum_i delta_i 1_{T_i}, computed in O(n + encoding size). Checks that
    // each diff removes present edges and adds absent ones.
    std::vector<double> marginal_values(int num_edges) const;
    FractionalEdgeVector marginals(int num_edges) const;
};

// Text serialization:
//   d <n> <h>
//   b <base edge ids>
//   s <delta_1> | |
//   s <delta_i> | <E_{i-1} ids> | <E'_{i-1} ids>     for i = 2..h
void write_decomposition(std::ostream& out, const ImplicitDecomposition& d);
std::string decomposition_to_string(const ImplicitDecomposition& d);
ImplicitDecomposition parse_decomposition(std::istream& in);
ImplicitDecomposition parse_decomposition_string(const std::string& text);

}  // namespace treepack
