#include "treepack/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "treepack/disjoint_set.hpp"

namespace treepack {

namespace {

void check_endpoints(int n, VertexId u, VertexId v) {
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw InvalidInput("edge endpoint out of range");
    if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), incident_(n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    edges_.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        if (e.id != static_cast<EdgeId>(i)) throw InvalidInput("edge ids must be dense and ordered");
        add_edge(e.u, e.v, e.cost);
    }
}

EdgeId Graph::add_edge(VertexId u, VertexId v, double cost) {
    check_endpoints(n_, u, v);
    if (!std::isfinite(cost)) throw InvalidInput("non-finite edge cost");
    if (cost < 0) throw InvalidInput("negative edge cost");
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{id, u, v, cost});
    incident_[u].push_back(id);
    incident_[v].push_back(id);
    return id;
}

Graph Graph::subgraph(std::span<const EdgeId> keep, std::vector<EdgeId>* original) const {
    Graph h(n_);
    if (original) original->clear();
    for (EdgeId e : keep) {
        const Edge& ed = edges_.at(e);
        h.add_edge(ed.u, ed.v, ed.cost);
        if (original) original->push_back(e);
    }
    return h;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    DisjointSet dsu(n_);
    int comps = n_;
    for (const Edge& e : edges_)
        if (dsu.unite(e.u, e.v)) --comps;
    return comps == 1;
}

bool is_spanning_tree(const Graph& g, std::span<const EdgeId> ids) {
    int n = g.num_vertices();
    if (n == 0) return ids.empty();
    for (EdgeId e : ids)
        if (e < 0 || e >= g.num_edges()) throw InvalidInput("unknown edge id " + std::to_string(e));
    if (static_cast<int>(ids.size()) != n - 1) return false;
    DisjointSet dsu(n);
    std::vector<char> seen(g.num_edges(), 0);
    for (EdgeId e : ids) {
        if (seen[e]) return false;
        seen[e] = 1;
        if (!dsu.unite(g.edge(e).u, g.edge(e).v)) return false;
    }
    return true;
}

SpanningTree::SpanningTree(const Graph& g, std::vector<EdgeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (!is_spanning_tree(g, ids_)) throw InvalidInput("edge set is not a spanning tree");
}

bool SpanningTree::contains(EdgeId e) const {
    return std::binary_search(ids_.begin(), ids_.end(), e);
}

std::vector<int> SpanningTree::degrees(const Graph& g) const {
    std::vector<int> deg(g.num_vertices(), 0);
    for (EdgeId e : ids_) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
    }
    return deg;
}

int SpanningTree::max_degree(const Graph& g) const {
    auto deg = degrees(g);
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

double SpanningTree::cost(const Graph& g) const {
    double c = 0;
    for (EdgeId e : ids_) c += g.edge(e).cost;
    return c;
}

std::vector<std::vector<std::pair<VertexId, EdgeId>>> SpanningTree::adjacency(const Graph& g) const {
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.num_vertices());
    for (EdgeId e : ids_) {
        const Edge& ed = g.edge(e);
        adj[ed.u].emplace_back(ed.v, e);
        adj[ed.v].emplace_back(ed.u, e);
    }
    return adj;
}

FractionalEdgeVector::FractionalEdgeVector(std::vector<double> x) : x_(std::move(x)) {
    for (std::size_t e = 0; e < x_.size(); ++e)
        if (!(x_[e] >= 0.0 && x_[e] <= 1.0))
            throw InvalidInput("fractional value out of [0,1] on edge " + std::to_string(e));
}

FractionalEdgeVector FractionalEdgeVector::indicator(int m, std::span<const EdgeId> ids) {
    FractionalEdgeVector x(m);
    for (EdgeId e : ids) x.set(e, 1.0);
    return x;
}

void FractionalEdgeVector::set(EdgeId e, double value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw InvalidInput("fractional value out of [0,1] on edge " + std::to_string(e));
    x_.at(e) = value;
}

std::vector<EdgeId> FractionalEdgeVector::support() const {
    std::vector<EdgeId> s;
    for (std::size_t e = 0; e < x_.size(); ++e)
        if (x_[e] > 0.0) s.push_back(static_cast<EdgeId>(e));
    return s;
}

double FractionalEdgeVector::sum() const { return std::accumulate(x_.begin(), x_.end(), 0.0); }

ConstraintSystem::ConstraintSystem(int num_edges, std::vector<ConstraintRow> rows)
    : m_(num_edges), rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        auto& r = rows_[i];
        if (!(r.bound >= 1.0) || !std::isfinite(r.bound))
            throw InvalidInput("row " + std::to_string(i) + ": bound must be >= 1");
        std::sort(r.entries.begin(), r.entries.end(),
                  [](const RowEntry& a, const RowEntry& b) { return a.edge < b.edge; });
        for (std::size_t j = 0; j < r.entries.size(); ++j) {
            const auto& en = r.entries[j];
            if (en.edge < 0 || en.edge >= m_)
                throw InvalidInput("row " + std::to_string(i) + ": unknown edge " + std::to_string(en.edge));
            if (!(en.coeff >= 0.0 && en.coeff <= 1.0))
                throw InvalidInput("row " + std::to_string(i) + ": coefficient out of range");
            if (j > 0 && r.entries[j - 1].edge == en.edge)
                throw InvalidInput("row " + std::to_string(i) + ": duplicate edge " + std::to_string(en.edge));
        }
        std::erase_if(r.entries, [](const RowEntry& en) { return en.coeff == 0.0; });
    }
}

ConstraintSystem ConstraintSystem::degree_bounds(const Graph& g, std::span<const double> bounds) {
    if (static_cast<int>(bounds.size()) != g.num_vertices())
        throw InvalidInput("need one degree bound per vertex");
    std::vector<ConstraintRow> rows;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        ConstraintRow r;
        r.bound = bounds[v];
        for (EdgeId e : g.incident(v)) r.entries.push_back({e, 1.0});
        rows.push_back(std::move(r));
    }
    return ConstraintSystem(g.num_edges(), std::move(rows));
}

ConstraintSystem ConstraintSystem::uniform_degree_bounds(const Graph& g, double bound) {
    std::vector<double> b(g.num_vertices(), bound);
    return degree_bounds(g, b);
}

double ConstraintSystem::min_bound() const {
    double mb = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        mb = i == 0 ? rows_[i].bound : std::min(mb, rows_[i].bound);
    return mb;
}

std::vector<double> ConstraintSystem::loads(std::span<const EdgeId> tree) const {
    std::vector<char> in(m_, 0);
    for (EdgeId e : tree) in.at(e) = 1;
    std::vector<double> out(rows_.size(), 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& en : rows_[i].entries)
            if (in[en.edge]) out[i] += en.coeff;
    return out;
}

std::vector<double> ConstraintSystem::loads(const FractionalEdgeVector& x) const {
    std::vector<double> out(rows_.size(), 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (const auto& en : rows_[i].entries) out[i] += en.coeff * x[en.edge];
    return out;
}

double ConstraintSystem::max_relative_load(const FractionalEdgeVector& x) const {
    auto l = loads(x);
    double worst = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) worst = std::max(worst, l[i] / rows_[i].bound);
    return worst;
}

double ConstraintSystem::max_relative_load(std::span<const EdgeId> tree) const {
    auto l = loads(tree);
    double worst = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) worst = std::max(worst, l[i] / rows_[i].bound);
    return worst;
}

ConstraintSystem ConstraintSystem::scaled_bounds(double factor) const {
    auto rows = rows_;
    for (auto& r : rows) r.bound *= factor;
    return ConstraintSystem(m_, std::move(rows));
}

ConstraintSystem ConstraintSystem::restrict_to(std::span<const EdgeId> keep) const {
    std::vector<EdgeId> remap(m_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap.at(keep[i]) = static_cast<EdgeId>(i);
    std::vector<ConstraintRow> rows;
    for (const auto& r : rows_) {
        ConstraintRow nr;
        nr.bound = r.bound;
        for (const auto& en : r.entries)
            if (remap[en.edge] >= 0) nr.entries.push_back({remap[en.edge], en.coeff});
        rows.push_back(std::move(nr));
    }
    return ConstraintSystem(static_cast<int>(keep.size()), std::move(rows));
}

bool ConstraintSystem::as_degree_bounds(const Graph& g, std::vector<double>& bounds) const {
    int n = g.num_vertices();
    bounds.assign(n, std::max(1, n - 1));
    std::vector<char> used(n, 0);
    for (const auto& r : rows_) {
        if (r.entries.empty()) return false;
        // Candidate vertex: common endpoint of the first entry's edge.
        const Edge& first = g.edge(r.entries.front().edge);
        bool matched = false;
        for (VertexId v : {first.u, first.v}) {
            std::vector<EdgeId> inc = g.incident(v);
            std::sort(inc.begin(), inc.end());
            if (inc.size() != r.entries.size()) continue;
            bool ok = true;
            for (std::size_t j = 0; j < inc.size() && ok; ++j)
                ok = inc[j] == r.entries[j].edge && r.entries[j].coeff == 1.0;
            if (ok && !used[v]) {
                used[v] = 1;
                bounds[v] = r.bound;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace treepack
