#include "treepack/mst.hpp"

#include <algorithm>
#include <numeric>

#include "treepack/disjoint_set.hpp"

namespace treepack {

SpanningTree mst(const Graph& g, std::span<const double> lengths, std::span<const char> active) {
    int m = g.num_edges();
    if (static_cast<int>(lengths.size()) != m) throw InvalidInput("need one length per edge");
    std::vector<EdgeId> order;
    order.reserve(m);
    for (EdgeId e = 0; e < m; ++e)
        if (active.empty() || active[e]) order.push_back(e);
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return lengths[a] < lengths[b] || (lengths[a] == lengths[b] && a < b);
    });
    DisjointSet dsu(g.num_vertices());
    std::vector<EdgeId> tree;
    for (EdgeId e : order)
        if (dsu.unite(g.edge(e).u, g.edge(e).v)) tree.push_back(e);
    if (g.num_vertices() > 0 && static_cast<int>(tree.size()) != g.num_vertices() - 1)
        throw InvalidInput("graph is disconnected");
    std::sort(tree.begin(), tree.end());
    return SpanningTree::unchecked(std::move(tree));
}

SpanningTree min_cost_tree(const Graph& g) {
    std::vector<double> c(g.num_edges());
    for (const Edge& e : g.edges()) c[e.id] = e.cost;
    return mst(g, c);
}

SpanningTree dfs_tree(const Graph& g) {
    int n = g.num_vertices();
    std::vector<EdgeId> tree;
    if (n == 0) return SpanningTree();
    std::vector<char> seen(n, 0);
    std::vector<std::pair<VertexId, std::size_t>> stack{{0, 0}};
    seen[0] = 1;
    std::vector<std::vector<EdgeId>> inc(n);
    for (VertexId v = 0; v < n; ++v) {
        inc[v] = g.incident(v);
        std::sort(inc[v].begin(), inc[v].end());
    }
    while (!stack.empty()) {
        auto& [v, pos] = stack.back();
        if (pos == inc[v].size()) {
            stack.pop_back();
            continue;
        }
        EdgeId e = inc[v][pos++];
        VertexId w = g.edge(e).other(v);
        if (seen[w]) continue;
        seen[w] = 1;
        tree.push_back(e);
        stack.emplace_back(w, 0);
    }
    if (static_cast<int>(tree.size()) != n - 1) throw InvalidInput("graph is disconnected");
    std::sort(tree.begin(), tree.end());
    return SpanningTree::unchecked(std::move(tree));
}

namespace {

// Union-find with undo, no path compression.
struct RollbackDsu {
    std::vector<int> parent, size;
    std::vector<int> history;
    explicit RollbackDsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int u) const {
        while (parent[u] != u) u = parent[u];
        return u;
    }
    bool unite(int u, int v) {
        u = find(u);
        v = find(v);
        if (u == v) return false;
        if (size[u] < size[v]) std::swap(u, v);
        parent[v] = u;
        size[u] += size[v];
        history.push_back(v);
        return true;
    }
    void undo() {
        int v = history.back();
        history.pop_back();
        size[parent[v]] -= size[v];
        parent[v] = v;
    }
};

struct Enumerator {
    const Graph& g;
    const std::function<void(const std::vector<EdgeId>&)>& visit;
    std::uint64_t limit;
    std::uint64_t count = 0;
    RollbackDsu dsu;
    std::vector<EdgeId> chosen;
    int need;

    void run(EdgeId i) {
        if (static_cast<int>(chosen.size()) == need) {
            if (++count > limit) throw LimitExceeded("more spanning trees than the limit");
            visit(chosen);
            return;
        }
        int m = g.num_edges();
        if (need - static_cast<int>(chosen.size()) > m - i) return;
        const Edge& e = g.edge(i);
        if (dsu.unite(e.u, e.v)) {
            chosen.push_back(i);
            run(i + 1);
            chosen.pop_back();
            dsu.undo();
        }
        run(i + 1);
    }
};

}  // namespace

std::uint64_t for_each_spanning_tree(const Graph& g, const std::function<void(const std::vector<EdgeId>&)>& visit,
                                     std::uint64_t limit) {
    int n = g.num_vertices();
    if (n == 0) return 0;
    if (!g.connected()) return 0;
    Enumerator en{g, visit, limit, 0, RollbackDsu(n), {}, n - 1};
    en.run(0);
    return en.count;
}

std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g, std::uint64_t limit) {
    std::vector<SpanningTree> out;
    for_each_spanning_tree(
        g, [&](const std::vector<EdgeId>& ids) { out.push_back(SpanningTree::unchecked(ids)); }, limit);
    return out;
}

std::uint64_t kirchhoff_tree_count(const Graph& g) {
    int n = g.num_vertices();
    if (n <= 1) return n == 1 ? 1 : 0;
    int d = n - 1;
    std::vector<std::vector<__int128>> a(d, std::vector<__int128>(d, 0));
    for (const Edge& e : g.edges()) {
        int u = e.u, v = e.v;
        if (u < d) a[u][u] += 1;
        if (v < d) a[v][v] += 1;
        if (u < d && v < d) {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    // Fraction-free Bareiss elimination.
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < d; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < d; ++r)
                if (a[r][k] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i) {
            for (int j = k + 1; j < d; ++j) {
                __int128 x, y;
                if (__builtin_mul_overflow(a[i][j], a[k][k], &x) || __builtin_mul_overflow(a[i][k], a[k][j], &y))
                    throw LimitExceeded("tree count overflows");
                a[i][j] = (x - y) / prev;
            }
        }
        prev = a[k][k];
    }
    __int128 det = a[d - 1][d - 1] * sign;
    if (det < 0 || det > static_cast<__int128>(UINT64_MAX)) throw LimitExceeded("tree count overflows");
    return static_cast<std::uint64_t>(det);
}

int brute_force_min_max_degree(const Graph& g, std::uint64_t limit) {
    int n = g.num_vertices();
    int best = -1;
    std::vector<int> deg(n);
    for_each_spanning_tree(
        g,
        [&](const std::vector<EdgeId>& ids) {
            std::fill(deg.begin(), deg.end(), 0);
            int mx = 0;
            for (EdgeId e : ids) {
                mx = std::max(mx, ++deg[g.edge(e).u]);
                mx = std::max(mx, ++deg[g.edge(e).v]);
            }
            if (best < 0 || mx < best) best = mx;
        },
        limit);
    if (best < 0 && n == 1) best = 0;
    if (best < 0) throw InvalidInput("graph is disconnected");
    return best;
}

}  // namespace treepack
