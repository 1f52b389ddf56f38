#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "treepack/contractible_forest.hpp"
#include "treepack/disjoint_set.hpp"
#include "treepack/generators.hpp"
#include "treepack/mst.hpp"
#include "treepack/swap_round.hpp"

using namespace treepack;

namespace {

// Random labelled tree on vertices 0..n-1 (random attachment), ids 0..n-2.
std::vector<EdgeRef> random_tree(int n, Rng& rng) {
    std::vector<EdgeRef> es;
    for (int v = 1; v < n; ++v) {
        VertexId p = static_cast<VertexId>(rng() % v);
        es.push_back(EdgeRef{p, v, v - 1});
    }
    return es;
}

std::vector<VertexId> iota_vertices(int n) {
    std::vector<VertexId> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i;
    return vs;
}

bool acyclic(const ContractibleForest& f) {
    auto vs = f.vertices();
    std::map<VertexId, int> idx;
    for (std::size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = static_cast<int>(i);
    DisjointSet d(static_cast<int>(vs.size()));
    for (const auto& e : f.edges())
        if (!d.unite(idx.at(e.a), idx.at(e.b))) return false;
    return true;
}

}  // namespace

TEST_CASE("disjoint set basics and change_rep") {
    DisjointSet d;
    int a = d.make_set(), b = d.make_set(), c = d.make_set();
    CHECK(d.find_set(a) == a);
    CHECK(d.find_set(a) == d.find_set(a));
    CHECK(d.unite(a, b));
    CHECK_FALSE(d.unite(a, b));
    d.change_rep(a, b);
    CHECK(d.find_set(a) == b);
    CHECK(d.find_set(b) == b);
    d.change_rep(b, a);
    CHECK(d.find_set(b) == a);
    CHECK(d.find_set(c) == c);
    CHECK_THROWS_AS(d.change_rep(a, c), InternalError);
}

TEST_CASE("disjoint set against a naive labelling") {
    Rng rng(9);
    const int n = 300;
    DisjointSet d(n);
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[i] = i;
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) rep[i] = i;  // rep of label class
    for (int step = 0; step < 5000; ++step) {
        int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        int op = static_cast<int>(rng() % 3);
        if (op == 0) {
            bool joined = label[u] != label[v];
            CHECK(d.unite(u, v) == joined);
            if (joined) {
                int keep = d.find_set(u);
                int lu = label[u], lv = label[v];
                for (int& l : label)
                    if (l == lv) l = lu;
                rep[lu] = keep;
            }
        } else if (op == 1 && label[u] == label[v]) {
            d.change_rep(u, v);
            rep[label[u]] = v;
        } else {
            CHECK(d.find_set(u) == rep[label[u]]);
            CHECK(d.same(u, v) == (label[u] == label[v]));
        }
    }
}

TEST_CASE("forest init") {
    std::vector<VertexId> vs{10, 20, 30};
    std::vector<EdgeRef> path{{10, 20, 0}, {20, 30, 1}};
    ContractibleForest f(vs, path);
    CHECK(f.represented_edge(10, 20) == std::pair<VertexId, VertexId>{10, 20});
    CHECK(f.orig_edge(10, 20) == 0);
    CHECK(f.orig_edge(30, 20) == 1);
    CHECK_THROWS_AS(f.orig_edge(10, 30), InvalidInput);

    std::vector<EdgeRef> cyc{{10, 20, 0}, {20, 30, 1}, {30, 10, 2}};
    CHECK_THROWS_AS(ContractibleForest(vs, cyc), InvalidInput);
    std::vector<EdgeRef> loop{{10, 10, 0}};
    CHECK_THROWS_AS(ContractibleForest(vs, loop), InvalidInput);
    std::vector<EdgeRef> unknown{{10, 99, 0}};
    CHECK_THROWS_AS(ContractibleForest(vs, unknown), InvalidInput);

    ContractibleForest iso(vs, std::vector<EdgeRef>{});
    CHECK(iso.num_vertices() == 3);
    CHECK(iso.num_edges() == 0);
    CHECK(iso.represented(20) == 20);
}

TEST_CASE("contract on a path") {
    // a=0, b=1, c=2
    auto vs = iota_vertices(3);
    std::vector<EdgeRef> path{{0, 1, 7}, {1, 2, 8}};
    ContractibleForest f(vs, path);
    f.contract(0, 1, 0);
    CHECK_FALSE(f.has_vertex(0));
    CHECK(f.num_vertices() == 2);
    CHECK(f.orig_edge(1, 2) == 8);
    CHECK(f.represented(0) == 1);
    // a-c maps to b-c
    CHECK(f.represented_edge(0, 2) == std::pair<VertexId, VertexId>{1, 2});
    CHECK_THROWS_AS(f.contract(0, 2, 0), InvalidInput);
}

TEST_CASE("contract a star leaf keeps the center") {
    auto vs = iota_vertices(4);
    std::vector<EdgeRef> star{{0, 1, 0}, {0, 2, 1}, {0, 3, 2}};
    ContractibleForest f(vs, star);
    f.contract(0, 1, 1);
    CHECK(f.degree(0) == 2);
    CHECK(f.orig_edge(0, 2) == 1);
    CHECK(f.orig_edge(0, 3) == 2);
    CHECK(f.adjacency_moves() == 0);
}

TEST_CASE("chain of contractions on a path of five") {
    // 0-1-2-3-4 with ids 0..3
    auto vs = iota_vertices(5);
    std::vector<EdgeRef> path{{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {3, 4, 3}};
    ContractibleForest f(vs, path);
    f.contract(1, 2, 1);  // 1 -> 2
    f.contract(0, 2, 2);  // 2 -> 0 (so 1 -> 0)
    f.contract(3, 4, 4);  // 4 -> 3
    CHECK(f.represented(1) == 0);
    CHECK(f.represented(2) == 0);
    CHECK(f.represented(0) == 0);
    CHECK(f.represented(4) == 3);
    CHECK(f.represented_edge(2, 4) == std::pair<VertexId, VertexId>{0, 3});
    CHECK(f.orig_edge(0, 3) == 2);
    CHECK(f.num_vertices() == 2);
    auto es = f.edges();
    REQUIRE(es.size() == 1);
    CHECK(es[0].id == 2);
    // Orientation follows the original endpoints of edge 2 (2 -> 0, 3 -> 3).
    CHECK(es[0].a == 0);
    CHECK(es[0].b == 3);
}

TEST_CASE("copy is independent") {
    Rng rng(4);
    auto vs = iota_vertices(12);
    auto es = random_tree(12, rng);
    ContractibleForest f(vs, es);
    f.contract(es[3].a, es[3].b, es[3].b);
    ContractibleForest c = f.copy();
    CHECK(c.edges() == f.edges());
    CHECK(c.vertices() == f.vertices());
    for (const auto& e : c.edges()) CHECK(c.orig_edge(e.a, e.b) == f.orig_edge(e.a, e.b));
    auto before = c.edges();
    auto e0 = f.edges().front();
    f.contract(e0.a, e0.b, e0.a);
    CHECK(c.edges() == before);

    ContractibleForest empty;
    CHECK(empty.copy().num_vertices() == 0);
}

TEST_CASE("ids survive contracting a random tree to two vertices") {
    Rng rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 30;
        auto vs = iota_vertices(n);
        auto es = random_tree(n, rng);
        ContractibleForest f(vs, es);
        // Bookkeeping oracle: original label -> current name.
        std::vector<VertexId> name(n);
        for (int i = 0; i < n; ++i) name[i] = i;
        std::vector<EdgeRef> order(es);
        std::shuffle(order.begin(), order.end(), rng);
        order.pop_back();  // keep one edge
        EdgeRef kept = es[0];
        for (const auto& e : es) {
            if (std::find_if(order.begin(), order.end(), [&](const EdgeRef& o) { return o.id == e.id; }) ==
                order.end())
                kept = e;
        }
        for (const auto& e : order) {
            VertexId a = name[e.a], b = name[e.b];
            REQUIRE(f.represented(e.a) == a);
            REQUIRE(f.represented(e.b) == b);
            CHECK(f.orig_edge(a, b) == e.id);
            VertexId z = (rng() & 1) ? a : b, s = z == a ? b : a;
            f.contract(a, b, z);
            for (auto& x : name)
                if (x == z) x = s;
            CHECK(f.represented(z) == s);
            CHECK(acyclic(f));
        }
        CHECK(f.num_vertices() == 2);
        auto [ra, rb] = f.represented_edge(kept.a, kept.b);
        CHECK(f.orig_edge(ra, rb) == kept.id);
    }
}

TEST_CASE("contraction with mapped diffs commutes") {
    // For a tree T, a diff (A, A') giving T2 = T - A + A', and B inside both
    // trees, contracting B and mapping the diff gives the contracted T2.
    Rng rng(33);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 6 + static_cast<int>(rng() % 10);
        Graph g = random_connected_graph(n, 2 * n, rng);
        std::vector<double> len(g.num_edges());
        for (auto& x : len) x = uniform01(rng);
        auto t1 = mst(g, len).edges();
        for (auto& x : len) x = uniform01(rng);
        auto t2 = mst(g, len).edges();
        std::vector<EdgeId> common;
        std::set_intersection(t1.begin(), t1.end(), t2.begin(), t2.end(), std::back_inserter(common));
        std::vector<EdgeId> bset;
        for (EdgeId e : common)
            if (rng() & 1) bset.push_back(e);

        std::vector<EdgeRef> refs1;
        for (EdgeId e : t1) refs1.push_back(edge_ref(g, e));
        ContractibleForest f1(iota_vertices(n), refs1);
        std::vector<EdgeRef> refs2;
        for (EdgeId e : t2) refs2.push_back(edge_ref(g, e));
        ContractibleForest f2(iota_vertices(n), refs2);
        for (EdgeId e : bset) {
            auto [a, b] = f1.represented_edge(g.edge(e).u, g.edge(e).v);
            f1.contract(a, b, b);
            auto [c, d] = f2.represented_edge(g.edge(e).u, g.edge(e).v);
            f2.contract(c, d, d);
        }
        // Apply the mapped diff to contracted T1.
        std::set<EdgeId> ids;
        for (const auto& e : f1.edges()) ids.insert(e.id);
        for (EdgeId e : t1)
            if (!std::binary_search(t2.begin(), t2.end(), e)) ids.erase(e);
        std::map<EdgeId, std::pair<VertexId, VertexId>> mapped;
        for (EdgeId e : t2)
            if (!std::binary_search(t1.begin(), t1.end(), e)) {
                ids.insert(e);
                mapped[e] = f1.represented_edge(g.edge(e).u, g.edge(e).v);
            }
        std::set<EdgeId> direct;
        for (const auto& e : f2.edges()) direct.insert(e.id);
        CHECK(ids == direct);
        for (auto& [e, ends] : mapped) {
            auto [c, d] = f2.represented_edge(g.edge(e).u, g.edge(e).v);
            CHECK(std::minmax(ends.first, ends.second) == std::minmax(c, d));
        }
    }
}

TEST_CASE("contraction moves stay within n log n") {
    Rng rng(8);
    for (int n : {10, 100, 1000, 5000}) {
        auto vs = iota_vertices(n);
        auto es = random_tree(n, rng);
        ContractibleForest f(vs, es);
        std::vector<EdgeRef> order(es);
        std::shuffle(order.begin(), order.end(), rng);
        for (const auto& e : order) {
            auto [a, b] = f.represented_edge(e.a, e.b);
            VertexId z = f.degree(a) < f.degree(b) ? a : b;
            f.contract(a, b, z);
        }
        CHECK(f.num_vertices() == 1);
        CHECK(static_cast<double>(f.adjacency_moves()) <= 8.0 * n * std::log2(n));
    }
}

TEST_CASE("shrink_intersection on a path with one swap") {
    // Path 0-1-2-3 with e1=(0,1), e2=(1,2), e3=(2,3); diff swaps e3 for e4=(1,3).
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(1, 3);
    std::vector<EdgeRef> t{edge_ref(g, 0), edge_ref(g, 1), edge_ref(g, 2)};
    ContractibleForest f(iota_vertices(4), t);
    std::vector<WorkingDiff> diffs{WorkingDiff{{edge_ref(g, 2)}, {edge_ref(g, 3)}}};
    auto r = shrink_intersection(f, diffs);
    CHECK(r.forest.num_vertices() == 2);
    REQUIRE(r.forest.num_edges() == 1);
    CHECK(r.forest.edges()[0].id == 2);
    std::sort(r.contracted.begin(), r.contracted.end());
    CHECK(r.contracted == std::vector<EdgeId>{0, 1});
    REQUIRE(r.diffs.size() == 1);
    CHECK(r.diffs[0].removed[0].id == 2);
    CHECK(r.diffs[0].added[0].id == 3);
    // e4 maps to the same pair of super-vertices as e3.
    auto e3 = r.diffs[0].removed[0], e4 = r.diffs[0].added[0];
    CHECK(std::minmax(e3.a, e3.b) == std::minmax(e4.a, e4.b));

    auto single = shrink_intersection(f, std::vector<WorkingDiff>{});
    CHECK(single.forest.num_vertices() == 1);
    CHECK(single.forest.num_edges() == 0);
}
