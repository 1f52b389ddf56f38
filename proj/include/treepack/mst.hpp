#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

// Kruskal under the order (length, edge id). Only edges with active[e] set
// are used when `active` is non-empty. Throws InvalidInput if disconnected.
SpanningTree mst(const Graph& g, std::span<const double> lengths, std::span<const char> active = {});

// MST under edge costs.
SpanningTree min_cost_tree(const Graph& g);

// Some spanning tree (DFS from vertex 0, neighbors by edge id).
SpanningTree dfs_tree(const Graph& g);

// Calls visit for every spanning tree (sorted edge ids). Throws LimitExceeded
// once more than `limit` trees would be produced. Returns the count.
std::uint64_t for_each_spanning_tree(const Graph& g, const std::function<void(const std::vector<EdgeId>&)>& visit,
                                     std::uint64_t limit = UINT64_MAX);

std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g, std::uint64_t limit = 1'000'000);

// Matrix-tree count via an exact integer determinant. Multigraphs count
// parallel edges separately.
std::uint64_t kirchhoff_tree_count(const Graph& g);

// Minimum possible max degree over all spanning trees, by enumeration.
int brute_force_min_max_degree(const Graph& g, std::uint64_t limit = 10'000'000);

}  // namespace treepack
