#include "treepack/furer_raghavachari.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "treepack/disjoint_set.hpp"
#include "treepack/mst.hpp"

namespace treepack {

DegreeWitness make_witness(const Graph& g, std::vector<VertexId> blocked) {
    int n = g.num_vertices();
    std::sort(blocked.begin(), blocked.end());
    blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());
    std::vector<char> in_w(n, 0);
    for (VertexId v : blocked) in_w.at(v) = 1;
    DisjointSet dsu(n);
    int comps = n - static_cast<int>(blocked.size());
    for (const Edge& e : g.edges())
        if (!in_w[e.u] && !in_w[e.v] && dsu.unite(e.u, e.v)) --comps;
    DegreeWitness w;
    w.blocked = std::move(blocked);
    w.components = comps;
    int s = static_cast<int>(w.blocked.size());
    if (s > 0)
        w.lower_bound = (comps + s - 1 + s - 1) / s;
    else
        w.lower_bound = n > 1 ? 1 : 0;
    return w;
}

namespace {

using Adj = std::vector<std::set<std::pair<VertexId, EdgeId>>>;

std::vector<VertexId> path_in(const Adj& adj, VertexId from, VertexId to) {
    int n = static_cast<int>(adj.size());
    std::vector<VertexId> parent(n, -2);
    std::vector<VertexId> stack{to};
    parent[to] = -1;
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (x == from) break;
        for (auto [y, _] : adj[x])
            if (parent[y] == -2) {
                parent[y] = x;
                stack.push_back(y);
            }
    }
    if (parent[from] == -2) throw InternalError("local search: tree is disconnected");
    std::vector<VertexId> path;
    for (VertexId x = from; x != -1; x = parent[x]) path.push_back(x);
    return path;
}

EdgeId edge_between(const Adj& adj, VertexId a, VertexId b) {
    auto it = adj[a].lower_bound({b, -1});
    if (it == adj[a].end() || it->first != b) throw InternalError("local search: missing tree edge");
    return it->second;
}

}  // namespace

ReduceResult fr_reduce(const Graph& g, const SpanningTree& t, std::span<const int> offset) {
    int n = g.num_vertices();
    if (!offset.empty() && static_cast<int>(offset.size()) != n) throw InvalidInput("need one offset per vertex");
    auto off = [&](VertexId v) { return offset.empty() ? 0 : offset[v]; };

    ReduceResult res;
    res.tree = t;
    std::vector<int> vd = t.degrees(g);
    for (VertexId v = 0; v < n; ++v) vd[v] += off(v);
    int k = n ? *std::max_element(vd.begin(), vd.end()) : 0;
    res.max_degree = k;
    int count_k = static_cast<int>(std::count(vd.begin(), vd.end(), k));

    std::vector<char> bad(n, 0);
    for (VertexId v = 0; v < n; ++v) bad[v] = vd[v] >= k - 1;

    // Rooted copy of the input tree for path queries.
    auto tadj = t.adjacency(g);
    std::vector<VertexId> parent(n, -1);
    std::vector<int> depth(n, 0);
    if (n > 0) {
        std::vector<VertexId> order{0};
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            VertexId x = order[i];
            for (auto [y, _] : tadj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    order.push_back(y);
                }
        }
    }
    auto tree_path = [&](VertexId u, VertexId v) {
        std::vector<VertexId> left, right;
        while (u != v) {
            if (depth[u] >= depth[v]) {
                left.push_back(u);
                u = parent[u];
            } else {
                right.push_back(v);
                v = parent[v];
            }
        }
        left.push_back(u);
        left.insert(left.end(), right.rbegin(), right.rend());
        return left;
    };

    DisjointSet comp(n);
    for (EdgeId e : t.edges()) {
        const Edge& ed = g.edge(e);
        if (!bad[ed.u] && !bad[ed.v]) comp.unite(ed.u, ed.v);
    }
    std::deque<EdgeId> queue;
    for (EdgeId e = 0; e < g.num_edges(); ++e) queue.push_back(e);
    std::vector<EdgeId> stored(n, -1);

    EdgeId improving = -1;
    VertexId target = -1;
    while (!queue.empty() && improving < 0) {
        EdgeId e = queue.front();
        queue.pop_front();
        const Edge& ed = g.edge(e);
        if (bad[ed.u] || bad[ed.v] || comp.same(ed.u, ed.v)) continue;
        auto path = tree_path(ed.u, ed.v);
        for (VertexId x : path)
            if (bad[x] && vd[x] == k) {
                improving = e;
                target = x;
                break;
            }
        if (improving >= 0) break;
        for (VertexId x : path) {
            if (!bad[x]) continue;
            bad[x] = 0;
            stored[x] = e;
            for (EdgeId f : g.incident(x)) queue.push_back(f);
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) comp.unite(path[i], path[i + 1]);
    }

    if (improving < 0) {
        std::vector<VertexId> w;
        for (VertexId v = 0; v < n; ++v)
            if (bad[v]) w.push_back(v);
        res.status = ReduceStatus::Witness;
        res.witness = make_witness(g, std::move(w));
        return res;
    }

    // Apply the improvement, first making room at endpoints that would reach
    // degree k - 1 + 1 by releasing the edges stored when they were unblocked.
    Adj cur(n);
    for (EdgeId e : t.edges()) {
        const Edge& ed = g.edge(e);
        cur[ed.u].insert({ed.v, e});
        cur[ed.v].insert({ed.u, e});
    }
    std::vector<int> cd = vd;
    std::vector<char> used(n, 0);
    auto swap_in = [&](EdgeId add, VertexId at, const std::vector<VertexId>& path) {
        auto pos = std::find(path.begin(), path.end(), at);
        if (pos == path.end() || pos == path.begin() || pos + 1 == path.end())
            throw InternalError("local search: vertex is not inside the cycle");
        VertexId nxt = *(pos + 1);
        EdgeId drop = edge_between(cur, at, nxt);
        cur[at].erase({nxt, drop});
        cur[nxt].erase({at, drop});
        --cd[at];
        --cd[nxt];
        const Edge& ad = g.edge(add);
        cur[ad.u].insert({ad.v, add});
        cur[ad.v].insert({ad.u, add});
        ++cd[ad.u];
        ++cd[ad.v];
    };
    std::function<void(VertexId)> make_room;
    std::function<void(VertexId)> release = [&](VertexId x) {
        if (stored[x] < 0 || used[x]) throw InternalError("local search: no stored edge to release");
        used[x] = 1;
        const Edge& f = g.edge(stored[x]);
        make_room(f.u);
        make_room(f.v);
        swap_in(stored[x], x, path_in(cur, f.u, f.v));
    };
    make_room = [&](VertexId y) {
        if (cd[y] >= k - 1) release(y);
    };
    const Edge& imp = g.edge(improving);
    make_room(imp.u);
    make_room(imp.v);
    swap_in(improving, target, path_in(cur, imp.u, imp.v));

    std::vector<EdgeId> ids;
    for (VertexId v = 0; v < n; ++v)
        for (auto [w, id] : cur[v])
            if (v < w) ids.push_back(id);
    if (!is_spanning_tree(g, ids)) throw InternalError("local search produced a non-tree");
    SpanningTree nt = SpanningTree::unchecked([&] {
        std::sort(ids.begin(), ids.end());
        return ids;
    }());
    std::vector<int> nd = nt.degrees(g);
    for (VertexId v = 0; v < n; ++v) nd[v] += off(v);
    int nk = *std::max_element(nd.begin(), nd.end());
    int ncount = static_cast<int>(std::count(nd.begin(), nd.end(), nk));
    if (!(nk < k || (nk == k && ncount < count_k))) throw InternalError("local search did not improve the tree");
    res.status = ReduceStatus::Improved;
    res.tree = std::move(nt);
    return res;
}

FrResult fr_min_degree(const Graph& g) {
    int n = g.num_vertices();
    if (n == 0) throw InvalidInput("empty graph");
    FrResult out;
    out.tree = dfs_tree(g);
    long long guard = static_cast<long long>(n) * n + 10;
    while (true) {
        ReduceResult r = fr_reduce(g, out.tree);
        ++out.reduce_calls;
        if (r.status == ReduceStatus::Witness) {
            out.witness = std::move(r.witness);
            break;
        }
        out.tree = std::move(r.tree);
        if (out.reduce_calls > guard) throw InternalError("local search did not terminate");
    }
    out.max_degree = out.tree.max_degree(g);
    if (out.max_degree > out.witness.lower_bound + 1) throw InternalError("witness does not certify the tree");
    return out;
}

NonuniformResult fr_nonuniform(const Graph& g, std::span<const int> bounds) {
    int n = g.num_vertices();
    if (n == 0) throw InvalidInput("empty graph");
    if (static_cast<int>(bounds.size()) != n) throw InvalidInput("need one bound per vertex");
    NonuniformResult out;
    out.tree = dfs_tree(g);
    if (n == 1) {
        out.status = NonuniformStatus::Tree;
        return out;
    }
    std::vector<int> offset(n);
    for (VertexId v = 0; v < n; ++v) {
        if (bounds[v] < 1 || bounds[v] > n - 1) throw InvalidInput("vertex bounds must lie in [1, n-1]");
        offset[v] = n - bounds[v];
    }
    auto excess = [&](const SpanningTree& t) {
        auto d = t.degrees(g);
        int worst = d[0] - bounds[0];
        for (VertexId v = 0; v < n; ++v) worst = std::max(worst, d[v] - bounds[v]);
        return worst;
    };
    long long guard = 2LL * n * n + 10;
    while (true) {
        int ex = excess(out.tree);
        if (ex <= 0) {
            out.status = NonuniformStatus::Tree;
            out.max_excess = ex;
            return out;
        }
        ReduceResult r = fr_reduce(g, out.tree, offset);
        ++out.reduce_calls;
        if (r.status == ReduceStatus::Witness) {
            out.witness = std::move(r.witness);
            out.max_excess = ex;
            if (ex <= 1) {
                out.status = NonuniformStatus::Tree;
                return out;
            }
            long long sum_b = 0;
            for (VertexId w : out.witness.blocked) sum_b += bounds[w];
            long long need = static_cast<long long>(out.witness.components) + out.witness.blocked.size() - 1;
            if (need <= sum_b) throw InternalError("witness does not certify infeasibility");
            out.status = NonuniformStatus::Infeasible;
            return out;
        }
        out.tree = std::move(r.tree);
        if (out.reduce_calls > guard) throw InternalError("local search did not terminate");
    }
}

}  // namespace treepack
