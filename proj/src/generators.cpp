#include "treepack/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace treepack {

namespace {

double draw_cost(Rng& rng, int max_cost) {
    if (max_cost <= 0) return 0.0;
    return 1.0 + static_cast<double>(rng() % static_cast<std::uint64_t>(max_cost));
}

std::vector<VertexId> shuffled_vertices(int n, Rng& rng) {
    std::vector<VertexId> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng() % static_cast<std::uint64_t>(i + 1)]);
    return p;
}

}  // namespace

Graph random_connected_graph(int n, int m, Rng& rng, bool simple, int max_cost) {
    if (n < 1) throw InvalidInput("need at least one vertex");
    if (m < n - 1) throw InvalidInput("too few edges for a connected graph");
    if (n == 1 && m > 0) throw InvalidInput("a single vertex has no edges");
    Graph g(n);
    std::set<std::pair<VertexId, VertexId>> present;
    auto perm = shuffled_vertices(n, rng);
    for (int i = 1; i < n; ++i) {
        VertexId u = perm[i], v = perm[rng() % static_cast<std::uint64_t>(i)];
        present.insert({std::min(u, v), std::max(u, v)});
        g.add_edge(u, v, draw_cost(rng, max_cost));
    }
    long long simple_cap = static_cast<long long>(n) * (n - 1) / 2;
    while (g.num_edges() < m) {
        VertexId u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
        if (u == v) continue;
        auto key = std::make_pair(std::min(u, v), std::max(u, v));
        if (simple && static_cast<long long>(present.size()) < simple_cap && present.count(key)) continue;
        present.insert(key);
        g.add_edge(u, v, draw_cost(rng, max_cost));
    }
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph star_graph(int n) {
    Graph g(n);
    for (VertexId v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    if (n == 2) g.add_edge(0, 1);
    if (n >= 3)
        for (VertexId v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph petersen_graph() {
    Graph g(10);
    for (VertexId i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    return g;
}

Instance generate_instance(const std::string& kind, const GeneratorParams& p, std::uint64_t seed) {
    Rng rng(seed);
    Graph g;
    if (kind == "random_gnm" || kind == "laminar_cuts") {
        int m = p.m > 0 ? p.m : 2 * p.n;
        g = random_connected_graph(p.n, m, rng, p.simple, p.max_cost);
    } else if (kind == "complete") {
        g = complete_graph(p.n);
    } else if (kind == "star") {
        g = star_graph(p.n);
    } else if (kind == "cycle") {
        g = cycle_graph(p.n);
    } else {
        throw InvalidInput("unknown generator '" + kind + "'");
    }
    if (kind != "random_gnm" && kind != "laminar_cuts" && p.max_cost > 0) {
        std::vector<Edge> es = g.edges();
        for (auto& e : es) e.cost = draw_cost(rng, p.max_cost);
        g = Graph(g.num_vertices(), std::move(es));
    }

    std::vector<ConstraintRow> rows;
    if (p.bound > 0) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            ConstraintRow r;
            r.bound = (kind == "star" && v == 0 && p.center_bound > 0) ? p.center_bound : p.bound;
            for (EdgeId e : g.incident(v)) r.entries.push_back({e, 1.0});
            rows.push_back(std::move(r));
        }
    }
    if (kind == "laminar_cuts" && p.cuts > 0) {
        // Nested prefixes of a random vertex order; each row bounds |delta(S)|.
        auto order = shuffled_vertices(g.num_vertices(), rng);
        std::vector<char> inside(g.num_vertices(), 0);
        int n = g.num_vertices();
        for (int c = 0; c < p.cuts && n > 1; ++c) {
            int size = 1 + static_cast<int>((static_cast<long long>(c) * (n - 1)) / p.cuts);
            std::fill(inside.begin(), inside.end(), 0);
            for (int i = 0; i < size; ++i) inside[order[i]] = 1;
            ConstraintRow r;
            r.bound = p.cut_bound;
            for (const Edge& e : g.edges())
                if (inside[e.u] != inside[e.v]) r.entries.push_back({e.id, 1.0});
            rows.push_back(std::move(r));
        }
    }
    int m = g.num_edges();
    return Instance{std::move(g), ConstraintSystem(m, std::move(rows))};
}

}  // namespace treepack
