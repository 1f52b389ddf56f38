#include "treepack/swap_round.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "treepack/decompose.hpp"

namespace treepack {

EdgeRef edge_ref(const Graph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    return EdgeRef{std::min(ed.u, ed.v), std::max(ed.u, ed.v), e};
}

namespace {

struct LocalTree {
    std::vector<std::vector<std::pair<int, EdgeId>>>& adj;

    void reset(int nv) {
        if (static_cast<int>(adj.size()) < nv) adj.resize(nv);
        for (int i = 0; i < nv; ++i) adj[i].clear();
    }
    void link(int a, int b, EdgeId id) {
        adj[a].emplace_back(b, id);
        adj[b].emplace_back(a, id);
    }
    void unlink(int a, int b, EdgeId id) {
        for (int x : {a, b}) {
            auto& v = adj[x];
            auto it = std::find_if(v.begin(), v.end(), [&](const auto& p) { return p.second == id; });
            if (it == v.end()) throw InternalError("merge: edge missing from tree");
            *it = v.back();
            v.pop_back();
        }
    }
};

struct End {
    EdgeId id;
    int a, b;
};

// Buffers reused across merges on the same thread.
struct MergeScratch {
    std::vector<VertexId> sorted_vs;
    std::vector<End> ends;
    std::vector<std::vector<std::pair<int, EdgeId>>> adj_a, adj_b;
    std::vector<EdgeId> ids2, only1, parent_edge;
    std::vector<int> side, parent, seen, stack;
};

}  // namespace

std::vector<EdgeId> merge_trees(std::span<const VertexId> vertices, double d1, std::span<const EdgeRef> t1, double d2,
                                std::span<const EdgeRef> t2, Rng& rng) {
    int nv = static_cast<int>(vertices.size());
    if (t1.size() + 1 != vertices.size() && !(vertices.empty() && t1.empty()))
        throw InvalidInput("merge: first tree does not span the vertices");
    if (t1.size() != t2.size()) throw InvalidInput("merge: trees differ in size");
    if (!(d1 > 0) || !(d2 > 0)) throw InvalidInput("merge: coefficients must be positive");
    thread_local MergeScratch sc;
    auto& sorted_vs = sc.sorted_vs;
    sorted_vs.assign(vertices.begin(), vertices.end());
    std::sort(sorted_vs.begin(), sorted_vs.end());
    auto local = [&](VertexId v) {
        auto it = std::lower_bound(sorted_vs.begin(), sorted_vs.end(), v);
        if (it == sorted_vs.end() || *it != v) throw InvalidInput("merge: unknown vertex");
        return static_cast<int>(it - sorted_vs.begin());
    };

    // Oriented local endpoints, sorted by edge id.
    auto& ends = sc.ends;
    ends.clear();
    LocalTree a{sc.adj_a};
    LocalTree b{sc.adj_b};
    a.reset(nv);
    b.reset(nv);
    for (const EdgeRef& e : t1) {
        ends.push_back({e.id, local(e.a), local(e.b)});
        a.link(ends.back().a, ends.back().b, e.id);
    }
    auto& ids2 = sc.ids2;
    ids2.clear();
    for (const EdgeRef& e : t2) {
        ends.push_back({e.id, local(e.a), local(e.b)});
        b.link(ends.back().a, ends.back().b, e.id);
        ids2.push_back(e.id);
    }
    std::sort(ends.begin(), ends.end(), [](const End& x, const End& y) { return x.id < y.id; });
    std::sort(ids2.begin(), ids2.end());
    auto end_of = [&](EdgeId id) {
        return *std::lower_bound(ends.begin(), ends.end(), id, [](const End& x, EdgeId v) { return x.id < v; });
    };
    // T1 \ T2 only shrinks during the merge, so it is consumed in increasing order.
    auto& only1 = sc.only1;
    only1.clear();
    for (const EdgeRef& e : t1)
        if (!std::binary_search(ids2.begin(), ids2.end(), e.id)) only1.push_back(e.id);
    std::sort(only1.begin(), only1.end());

    auto& side = sc.side;
    auto& parent = sc.parent;
    auto& parent_edge = sc.parent_edge;
    auto& seen = sc.seen;
    auto& stack = sc.stack;
    side.assign(nv, 0);
    seen.assign(nv, 0);
    parent.assign(nv, -1);
    parent_edge.assign(nv, -1);
    int stamp = 0;
    const double keep_prob = d1 / (d1 + d2);

    for (EdgeId e : only1) {
        auto [eid, ea, eb] = end_of(e);
        // Side of ea in T1 - e.
        a.unlink(ea, eb, e);
        ++stamp;
        stack.assign(1, ea);
        side[ea] = stamp;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [y, _] : a.adj[x])
                if (side[y] != stamp) {
                    side[y] = stamp;
                    stack.push_back(y);
                }
        }
        // T2 path from ea to eb via parent pointers of a search rooted at eb.
        stack.assign(1, eb);
        seen[eb] = stamp;
        parent[eb] = -1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x == ea) break;
            for (auto [y, id] : b.adj[x])
                if (seen[y] != stamp) {
                    seen[y] = stamp;
                    parent[y] = x;
                    parent_edge[y] = id;
                    stack.push_back(y);
                }
        }
        if (seen[ea] != stamp) throw InternalError("merge: second tree is not spanning");
        EdgeId f = -1;
        for (int x = ea; x != eb; x = parent[x]) {
            int y = parent[x];
            if ((side[x] == stamp) != (side[y] == stamp)) {
                f = parent_edge[x];
                break;
            }
        }
        if (f < 0) throw InternalError("merge: no exchange edge found");
        auto [fid, fa, fb] = end_of(f);
        if (uniform01(rng) < keep_prob) {
            a.link(ea, eb, e);
            b.unlink(fa, fb, f);
            b.link(ea, eb, e);
        } else {
            a.link(fa, fb, f);
        }
    }
    std::vector<EdgeId> out;
    out.reserve(t1.size());
    for (int x = 0; x < nv; ++x)
        for (auto [y, id] : a.adj[x])
            if (x < y) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

SpanningTree merge_bases(const Graph& g, double d1, const SpanningTree& t1, double d2, const SpanningTree& t2,
                         Rng& rng) {
    std::vector<VertexId> vs(g.num_vertices());
    std::iota(vs.begin(), vs.end(), 0);
    std::vector<EdgeRef> r1, r2;
    for (EdgeId e : t1.edges()) r1.push_back(edge_ref(g, e));
    for (EdgeId e : t2.edges()) r2.push_back(edge_ref(g, e));
    auto ids = merge_trees(vs, d1, r1, d2, r2, rng);
    if (!is_spanning_tree(g, ids)) throw InternalError("merge produced a non-tree");
    return SpanningTree::unchecked(std::move(ids));
}

ShrinkResult shrink_intersection(const ContractibleForest& tree, std::span<const WorkingDiff> diffs) {
    std::unordered_set<EdgeId> touched;
    for (const auto& d : diffs) {
        for (const auto& e : d.removed) touched.insert(e.id);
        for (const auto& e : d.added) touched.insert(e.id);
    }
    ShrinkResult out{tree.copy(), {}, {}};
    ContractibleForest& f = out.forest;
    for (const EdgeRef& e : tree.edges()) {
        if (touched.count(e.id)) continue;
        auto [u, v] = f.represented_edge(e.a, e.b);
        VertexId z = f.degree(u) <= f.degree(v) ? u : v;
        f.contract(u, v, z);
        out.contracted.push_back(e.id);
    }
    auto rename = [&](const EdgeRef& e) {
        auto [a, b] = f.represented_edge(e.a, e.b);
        if (a == b) throw InternalError("shrink: diff edge became a self-loop");
        return EdgeRef{a, b, e.id};
    };
    out.diffs.reserve(diffs.size());
    for (const auto& d : diffs) {
        WorkingDiff nd;
        for (const auto& e : d.removed) nd.removed.push_back(rename(e));
        for (const auto& e : d.added) nd.added.push_back(rename(e));
        out.diffs.push_back(std::move(nd));
    }
    return out;
}

namespace {

// Diffs of a slice stored back to back: diff i owns entries
// [first[i], first[i] + size[i]) of both `removed` and `added`.
struct FlatDiffs {
    std::vector<EdgeRef> removed;
    std::vector<EdgeRef> added;
    std::vector<std::size_t> first;
    std::vector<std::size_t> size;
};

FlatDiffs flatten(std::span<const WorkingDiff> diffs) {
    FlatDiffs f;
    for (const auto& d : diffs) {
        if (d.removed.size() != d.added.size()) throw InvalidInput("diff sizes differ");
        f.first.push_back(f.removed.size());
        f.size.push_back(d.removed.size());
        f.removed.insert(f.removed.end(), d.removed.begin(), d.removed.end());
        f.added.insert(f.added.end(), d.added.begin(), d.added.end());
    }
    return f;
}

struct Slice {
    const FlatDiffs* diffs;
    std::size_t begin;  // first diff
    std::size_t count;  // number of diffs
    std::size_t entry_begin() const { return count ? diffs->first[begin] : 0; }
    std::size_t entry_end() const { return count ? diffs->first[begin + count - 1] + diffs->size[begin + count - 1] : 0; }
};

// A tree of the recursion: sorted vertex names and edges sorted by id.
struct PlainTree {
    std::vector<VertexId> verts;
    std::vector<EdgeRef> edges;
};

std::vector<EdgeId> edge_ids(const std::vector<EdgeRef>& edges) {
    std::vector<EdgeId> ids;
    ids.reserve(edges.size());
    for (const auto& e : edges) ids.push_back(e.id);
    return ids;
}

std::vector<EdgeId> swap_rec(const PlainTree& tree, Slice sl, std::span<const double> deltas, Rng& rng) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < sl.count; ++i) total += sl.diffs->size[sl.begin + i];
    if (deltas.size() == 1 || total == 0) return edge_ids(tree.edges);

    // Largest split point whose prefix of diffs holds at most half the changes.
    std::size_t split = 0, prefix = 0;
    for (std::size_t l = 0; l < deltas.size(); ++l) {
        if (2 * prefix <= total) split = l;
        if (l < sl.count) prefix += sl.diffs->size[sl.begin + l];
    }

    // Contract the edges common to every tree of the slice.
    const std::size_t lo = sl.entry_begin(), hi = sl.entry_end();
    std::vector<EdgeId> touched;
    touched.reserve(2 * (hi - lo));
    for (std::size_t j = lo; j < hi; ++j) {
        touched.push_back(sl.diffs->removed[j].id);
        touched.push_back(sl.diffs->added[j].id);
    }
    std::sort(touched.begin(), touched.end());
    bool shrinks = false;
    for (const EdgeRef& e : tree.edges)
        if (!std::binary_search(touched.begin(), touched.end(), e.id)) shrinks = true;

    std::vector<EdgeId> contracted;
    PlainTree shrunk;
    FlatDiffs renamed;
    const PlainTree* small = &tree;
    Slice inner = sl;
    if (shrinks) {
        ContractibleForest f(tree.verts, tree.edges);
        for (const EdgeRef& e : tree.edges) {
            if (std::binary_search(touched.begin(), touched.end(), e.id)) continue;
            auto [u, v] = f.represented_edge(e.a, e.b);
            VertexId z = f.degree(u) <= f.degree(v) ? u : v;
            f.contract(u, v, z);
            contracted.push_back(e.id);
        }
        auto rename = [&](const EdgeRef& e) {
            auto [a, b] = f.represented_edge(e.a, e.b);
            if (a == b) throw InternalError("shrink: diff edge became a self-loop");
            return EdgeRef{a, b, e.id};
        };
        renamed.removed.reserve(hi - lo);
        renamed.added.reserve(hi - lo);
        for (std::size_t i = 0; i < sl.count; ++i) {
            renamed.first.push_back(sl.diffs->first[sl.begin + i] - lo);
            renamed.size.push_back(sl.diffs->size[sl.begin + i]);
        }
        for (std::size_t j = lo; j < hi; ++j) {
            renamed.removed.push_back(rename(sl.diffs->removed[j]));
            renamed.added.push_back(rename(sl.diffs->added[j]));
        }
        shrunk.verts = f.vertices();
        shrunk.edges = f.edges();
        small = &shrunk;
        inner = Slice{&renamed, 0, sl.count};
    }
    const std::size_t ilo = inner.entry_begin(), ihi = inner.entry_end();

    // Every edge that appears in some tree of the slice, by id.
    std::vector<EdgeRef> ref = small->edges;
    ref.insert(ref.end(), inner.diffs->added.begin() + ilo, inner.diffs->added.begin() + ihi);
    std::sort(ref.begin(), ref.end(), [](const EdgeRef& x, const EdgeRef& y) { return x.id < y.id; });
    ref.erase(std::unique(ref.begin(), ref.end(), [](const EdgeRef& x, const EdgeRef& y) { return x.id == y.id; }),
              ref.end());
    auto index_of = [&](EdgeId id) {
        auto it = std::lower_bound(ref.begin(), ref.end(), id, [](const EdgeRef& x, EdgeId v) { return x.id < v; });
        if (it == ref.end() || it->id != id) throw InternalError("fast_swap: edge missing from the slice");
        return static_cast<std::size_t>(it - ref.begin());
    };

    // Tree number split + 1, the first tree of the right half.
    std::vector<char> present(ref.size(), 0);
    for (const auto& e : small->edges) present[index_of(e.id)] = 1;
    for (std::size_t i = 0; i <= split; ++i) {
        std::size_t f = inner.diffs->first[inner.begin + i], z = inner.diffs->size[inner.begin + i];
        for (std::size_t j = f; j < f + z; ++j) present[index_of(inner.diffs->removed[j].id)] = 0;
        for (std::size_t j = f; j < f + z; ++j) present[index_of(inner.diffs->added[j].id)] = 1;
    }
    PlainTree right_tree{small->verts, {}};
    right_tree.edges.reserve(small->edges.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
        if (present[k]) right_tree.edges.push_back(ref[k]);
    if (right_tree.edges.size() != small->edges.size()) throw InternalError("fast_swap: diffs do not replay to trees");

    auto left_ids = swap_rec(*small, Slice{inner.diffs, inner.begin, split}, deltas.subspan(0, split + 1), rng);
    auto right_ids = swap_rec(right_tree, Slice{inner.diffs, inner.begin + split + 1, inner.count - split - 1},
                              deltas.subspan(split + 1), rng);

    double dl = std::accumulate(deltas.begin(), deltas.begin() + split + 1, 0.0);
    double dr = std::accumulate(deltas.begin() + split + 1, deltas.end(), 0.0);
    std::vector<EdgeId> merged;
    if (left_ids == right_ids) {
        merged = std::move(left_ids);
    } else {
        std::vector<EdgeRef> lt, rt;
        lt.reserve(left_ids.size());
        rt.reserve(right_ids.size());
        for (EdgeId id : left_ids) lt.push_back(ref[index_of(id)]);
        for (EdgeId id : right_ids) rt.push_back(ref[index_of(id)]);
        merged = merge_trees(small->verts, dl, lt, dr, rt, rng);
    }
    merged.insert(merged.end(), contracted.begin(), contracted.end());
    std::sort(merged.begin(), merged.end());
    return merged;
}

}  // namespace

std::vector<EdgeId> fast_swap(const ContractibleForest& tree, std::span<const WorkingDiff> diffs,
                              std::span<const double> deltas, Rng& rng) {
    if (deltas.size() != diffs.size() + 1) throw InvalidInput("fast_swap needs one more coefficient than diffs");
    FlatDiffs flat = flatten(diffs);
    return swap_rec(PlainTree{tree.vertices(), tree.edges()}, Slice{&flat, 0, diffs.size()}, deltas, rng);
}

SpanningTree fast_swap(const Graph& g, const ImplicitDecomposition& d, Rng& rng) {
    if (d.n != g.num_vertices()) throw InvalidInput("decomposition vertex count does not match graph");
    if (d.deltas.size() != d.diffs.size() + 1) throw InvalidInput("decomposition needs h-1 diffs for h trees");
    std::vector<VertexId> vs(g.num_vertices());
    std::iota(vs.begin(), vs.end(), 0);
    std::vector<EdgeRef> base;
    for (EdgeId e : d.base) base.push_back(edge_ref(g, e));
    if (!is_spanning_tree(g, d.base)) throw InvalidInput("decomposition base is not a spanning tree");
    std::sort(base.begin(), base.end(), [](const EdgeRef& x, const EdgeRef& y) { return x.id < y.id; });
    PlainTree t{std::move(vs), std::move(base)};
    FlatDiffs flat;
    for (const auto& df : d.diffs) {
        if (df.removed.size() != df.added.size()) throw InvalidInput("diff sizes differ");
        flat.first.push_back(flat.removed.size());
        flat.size.push_back(df.removed.size());
        for (EdgeId e : df.removed) flat.removed.push_back(edge_ref(g, e));
        for (EdgeId e : df.added) flat.added.push_back(edge_ref(g, e));
    }
    auto ids = swap_rec(t, Slice{&flat, 0, d.diffs.size()}, d.deltas, rng);
    if (!is_spanning_tree(g, ids)) throw InternalError("swap rounding produced a non-tree");
    return SpanningTree::unchecked(std::move(ids));
}

RoundResult swap_round_point(const Graph& g, const FractionalEdgeVector& x, double eps, std::uint64_t seed) {
    RoundResult out;
    DecomposeResult d = implicit_decompose(g, x, eps, derive_seed(seed, 0x646563ULL));
    if (!d.ok()) return out;
    Rng rng(derive_seed(seed, 0x726e64ULL));
    out.tree = fast_swap(g, d.decomposition, rng);
    out.decomposition = std::move(d.decomposition);
    out.status = RoundStatus::Tree;
    return out;
}

}  // namespace treepack
