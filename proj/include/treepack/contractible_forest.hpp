#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treepack/disjoint_set.hpp"
#include "treepack/types.hpp"

namespace treepack {

// An edge in some vertex naming. The orientation (a, b) is carried through
// contractions: a stays the image of the endpoint that was `a` originally.
struct EdgeRef {
    VertexId a = 0;
    VertexId b = 0;
    EdgeId id = 0;

    bool operator==(const EdgeRef&) const = default;
};

// Forest supporting edge contraction while remembering which original
// vertex every current vertex stands for.
class ContractibleForest {
public:
    ContractibleForest() = default;
    // Throws InvalidInput on unknown endpoints, self-loops, duplicate ids or cycles.
    ContractibleForest(std::span<const VertexId> vertices, std::span<const EdgeRef> edges);

    // Contracts edge uv, deleting z (which must be u or v); the other endpoint survives.
    // Edges of z are re-attached to the survivor keeping their ids. If the
    // survivor already has an edge to the same neighbor, the smaller id is
    // kept and the other is recorded in dropped_edges().
    void contract(VertexId u, VertexId v, VertexId z);

    // Current names of the vertices that original vertices u and v were merged into.
    std::pair<VertexId, VertexId> represented_edge(VertexId u, VertexId v);
    VertexId represented(VertexId u);

    // Id of the current edge between u and v; throws InvalidInput if absent.
    EdgeId orig_edge(VertexId u, VertexId v) const;

    // Fresh forest over the current vertices and edges; the copy forgets the
    // contraction history.
    ContractibleForest copy() const;

    bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }
    int degree(VertexId v) const;
    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_edges() const { return static_cast<int>(ends_.size()); }
    std::vector<VertexId> vertices() const;      // sorted
    std::vector<EdgeRef> edges() const;          // sorted by id
    const std::map<VertexId, EdgeId>& neighbors(VertexId v) const;

    // Adjacency entries re-keyed by contractions so far.
    std::uint64_t adjacency_moves() const { return moves_; }
    const std::vector<EdgeId>& dropped_edges() const { return dropped_; }

private:
    int index_of(VertexId label) const;

    std::unordered_map<VertexId, std::map<VertexId, EdgeId>> adj_;
    std::unordered_map<EdgeId, EdgeRef> ends_;
    // Original labels and union-find over them.
    std::unordered_map<VertexId, int> index_;
    std::vector<VertexId> label_;
    DisjointSet rep_;
    std::uint64_t moves_ = 0;
    std::vector<EdgeId> dropped_;
};

}  // namespace treepack
