#pragma once

#include <span>
#include <utility>
#include <vector>

#include "treepack/types.hpp"

namespace treepack {

struct Edge {
    EdgeId id = 0;
    VertexId u = 0;
    VertexId v = 0;
    double cost = 0.0;

    VertexId other(VertexId w) const { return w == u ? v : u; }
};

// Undirected multigraph with dense vertex ids [0, n) and dense edge ids [0, m).
// Parallel edges are allowed; self-loops are not.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), incident_(n) {
        if (n < 0) throw InvalidInput("negative vertex count");
    }
    // edges[i].id must equal i.
    Graph(int n, std::vector<Edge> edges);

    EdgeId add_edge(VertexId u, VertexId v, double cost = 0.0);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<EdgeId>& incident(VertexId v) const { return incident_[v]; }
    int degree(VertexId v) const { return static_cast<int>(incident_[v].size()); }

    // Graph on the same vertices keeping only `keep` edges, renumbered densely
    // in the order given. original[i] is the id in *this of the new edge i.
    Graph subgraph(std::span<const EdgeId> keep, std::vector<EdgeId>* original = nullptr) const;

    bool connected() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incident_;
};

// A spanning tree stored as its sorted edge ids.
class SpanningTree {
public:
    SpanningTree() = default;
    // Validates that ids form a spanning tree of g; throws InvalidInput otherwise.
    SpanningTree(const Graph& g, std::vector<EdgeId> ids);

    static SpanningTree unchecked(std::vector<EdgeId> sorted_ids) {
        SpanningTree t;
        t.ids_ = std::move(sorted_ids);
        return t;
    }

    const std::vector<EdgeId>& edges() const& { return ids_; }
    std::vector<EdgeId> edges() && { return std::move(ids_); }
    std::size_t size() const { return ids_.size(); }
    bool contains(EdgeId e) const;

    std::vector<int> degrees(const Graph& g) const;
    int max_degree(const Graph& g) const;
    double cost(const Graph& g) const;
    // Per-vertex list of (neighbor, edge id).
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency(const Graph& g) const;

    bool operator==(const SpanningTree& o) const { return ids_ == o.ids_; }

private:
    std::vector<EdgeId> ids_;
};

bool is_spanning_tree(const Graph& g, std::span<const EdgeId> ids);

// Vector indexed by edge id with entries in [0, 1].
class FractionalEdgeVector {
public:
    FractionalEdgeVector() = default;
    explicit FractionalEdgeVector(int m) : x_(m, 0.0) {}
    explicit FractionalEdgeVector(std::vector<double> x);

    static FractionalEdgeVector indicator(int m, std::span<const EdgeId> ids);

    int size() const { return static_cast<int>(x_.size()); }
    double operator[](EdgeId e) const { return x_[e]; }
    void set(EdgeId e, double value);
    const std::vector<double>& values() const { return x_; }
    std::vector<EdgeId> support() const;
    double sum() const;

private:
    std::vector<double> x_;
};

struct RowEntry {
    EdgeId edge;
    double coeff;
};

struct ConstraintRow {
    double bound = 1.0;
    std::vector<RowEntry> entries;  // sorted by edge id, no duplicates
};

// Packing constraints A x <= b with A in [0,1] and b >= 1.
class ConstraintSystem {
public:
    ConstraintSystem() = default;
    ConstraintSystem(int num_edges, std::vector<ConstraintRow> rows);

    // One row per vertex over its incident edges with coefficient 1.
    static ConstraintSystem degree_bounds(const Graph& g, std::span<const double> bounds);
    static ConstraintSystem uniform_degree_bounds(const Graph& g, double bound);

    int num_rows() const { return static_cast<int>(rows_.size()); }
    int num_edges() const { return m_; }
    const ConstraintRow& row(int i) const { return rows_[i]; }
    const std::vector<ConstraintRow>& rows() const { return rows_; }
    double min_bound() const;

    // (A 1_T)_i for every row.
    std::vector<double> loads(std::span<const EdgeId> tree) const;
    std::vector<double> loads(const FractionalEdgeVector& x) const;
    // max_i (A x)_i / b_i; 0 when there are no rows.
    double max_relative_load(const FractionalEdgeVector& x) const;
    double max_relative_load(std::span<const EdgeId> tree) const;

    ConstraintSystem scaled_bounds(double factor) const;
    // Rows restricted to the kept edges, renumbered as in Graph::subgraph.
    ConstraintSystem restrict_to(std::span<const EdgeId> keep) const;

    // If every row is exactly a degree row of a distinct vertex, returns the
    // per-vertex bound (vertices without a row get n-1).
    bool as_degree_bounds(const Graph& g, std::vector<double>& bounds) const;

private:
    int m_ = 0;
    std::vector<ConstraintRow> rows_;
};

}  // namespace treepack
