#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "treepack/furer_raghavachari.hpp"
#include "treepack/generators.hpp"
#include "treepack/mst.hpp"
#include "treepack/pipelines.hpp"

using namespace treepack;

namespace {

Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

std::pair<int, int> degree_key(const Graph& g, const SpanningTree& t) {
    auto d = t.degrees(g);
    int k = *std::max_element(d.begin(), d.end());
    return {k, static_cast<int>(std::count(d.begin(), d.end(), k))};
}

}  // namespace

TEST_CASE("star gives a witness at the center") {
    Graph g = star_graph(6);
    SpanningTree t(g, {0, 1, 2, 3, 4});
    auto r = fr_reduce(g, t);
    REQUIRE(r.status == ReduceStatus::Witness);
    CHECK(r.witness.blocked == std::vector<VertexId>{0});
    CHECK(r.witness.components == 5);
    CHECK(r.witness.lower_bound == 5);
    CHECK(r.max_degree == 5);
}

TEST_CASE("path cannot improve") {
    Graph g = path_graph(6);
    auto t = dfs_tree(g);
    auto r = fr_reduce(g, t);
    REQUIRE(r.status == ReduceStatus::Witness);
    CHECK(r.max_degree <= r.witness.lower_bound + 1);
}

TEST_CASE("K4 from the star improves to a path") {
    Graph g = complete_graph(4);  // edges 0,1,2 form the star at 0
    SpanningTree t(g, {0, 1, 2});
    auto key = degree_key(g, t);
    int calls = 0;
    while (true) {
        auto r = fr_reduce(g, t);
        if (r.status == ReduceStatus::Witness) break;
        auto next = degree_key(g, r.tree);
        CHECK(next < key);
        key = next;
        t = r.tree;
        ++calls;
    }
    CHECK(calls >= 1);
    CHECK(t.max_degree(g) == 2);
}

TEST_CASE("witness recomputed independently") {
    Graph g = petersen_graph();
    auto fr = fr_min_degree(g);
    CHECK(is_spanning_tree(g, fr.tree.edges()));
    CHECK(fr.max_degree <= 3);
    auto w = make_witness(g, fr.witness.blocked);
    CHECK(w.components == fr.witness.components);
    CHECK(w.lower_bound == fr.witness.lower_bound);
    CHECK(fr.witness.lower_bound <= brute_force_min_max_degree(g));
}

TEST_CASE("local search on the small random suite") {
    Rng rng(1234);
    for (int rep = 0; rep < 40; ++rep) {
        int n = 3 + static_cast<int>(rng() % 6);
        int m = n - 1 + static_cast<int>(rng() % (n + 3));
        Graph g = random_connected_graph(n, m, rng, rep % 3 != 0);
        int bstar = brute_force_min_max_degree(g);
        auto fr = fr_min_degree(g);
        CHECK(is_spanning_tree(g, fr.tree.edges()));
        CHECK(fr.max_degree <= bstar + 1);
        CHECK(fr.witness.lower_bound <= bstar);
        CHECK(fr.max_degree <= fr.witness.lower_bound + 1);
        auto w = make_witness(g, fr.witness.blocked);
        CHECK(w.lower_bound == fr.witness.lower_bound);
        CHECK(fr.reduce_calls <= n * n + 1);

        // Progress is lexicographic from an arbitrary start.
        auto t = dfs_tree(g);
        auto key = degree_key(g, t);
        for (int step = 0; step < n * n; ++step) {
            auto r = fr_reduce(g, t);
            if (r.status == ReduceStatus::Witness) break;
            auto next = degree_key(g, r.tree);
            CHECK(next < key);
            key = next;
            t = r.tree;
        }
    }
}

TEST_CASE("nonuniform bounds") {
    Graph k5 = complete_graph(5);
    std::vector<int> loose(5, 4);
    auto r = fr_nonuniform(k5, loose);
    CHECK(r.status == NonuniformStatus::Tree);
    CHECK(r.reduce_calls == 0);

    Graph star = star_graph(5);
    std::vector<int> b{1, 1, 1, 1, 1};
    auto s = fr_nonuniform(star, b);
    CHECK(s.status == NonuniformStatus::Infeasible);
    long long sum_b = 0;
    for (VertexId w : s.witness.blocked) sum_b += b[w];
    CHECK(s.witness.components + static_cast<long long>(s.witness.blocked.size()) - 1 > sum_b);

    Graph c5 = cycle_graph(5);
    std::vector<int> two(5, 2);
    auto c = fr_nonuniform(c5, two);
    REQUIRE(c.status == NonuniformStatus::Tree);
    CHECK(c.tree.max_degree(c5) <= 2);

    std::vector<int> bad{0, 2, 2, 2, 2};
    CHECK_THROWS_AS(fr_nonuniform(c5, bad), InvalidInput);
}

TEST_CASE("nonuniform bounds on the random suite") {
    Rng rng(4321);
    for (int rep = 0; rep < 40; ++rep) {
        int n = 4 + static_cast<int>(rng() % 4);
        Graph g = random_connected_graph(n, n + static_cast<int>(rng() % n), rng);
        std::vector<int> b(n);
        for (int& x : b) x = 1 + static_cast<int>(rng() % 3);
        bool exists = false;
        for_each_spanning_tree(g, [&](const std::vector<EdgeId>& ids) {
            auto d = SpanningTree::unchecked(ids).degrees(g);
            bool ok = true;
            for (int v = 0; v < n; ++v) ok = ok && d[v] <= b[v];
            exists = exists || ok;
        });
        auto r = fr_nonuniform(g, b);
        if (r.status == NonuniformStatus::Tree) {
            auto d = r.tree.degrees(g);
            for (int v = 0; v < n; ++v) CHECK(d[v] <= b[v] + 1);
        } else {
            CHECK_FALSE(exists);
        }
        if (exists) CHECK(r.status == NonuniformStatus::Tree);
    }
}

TEST_CASE("estimate_min_degree examples") {
    CHECK(estimate_min_degree(star_graph(6), 0.1, 1).bound == 5);
    CHECK(estimate_min_degree(complete_graph(4), 0.1, 1).bound == 2);
    Rng rng(99);
    int pass = 0, total = 20;
    for (int rep = 0; rep < total; ++rep) {
        int n = 4 + static_cast<int>(rng() % 5);
        Graph g = random_connected_graph(n, n + static_cast<int>(rng() % n), rng);
        int bstar = brute_force_min_max_degree(g);
        auto est = estimate_min_degree(g, 0.1, rng());
        int hi = static_cast<int>(std::ceil((1 + kFeasibilitySlack * 0.1) * est.bound - 1e-9)) + 1;
        if (est.bound <= bstar && bstar <= hi) ++pass;
    }
    CHECK(pass >= total - 1);
}

TEST_CASE("bdst pipeline examples") {
    Graph c6 = cycle_graph(6);
    auto r = bdst_sparse_pipeline(c6, std::vector<int>(6, 2), 0.1, 1);
    CHECK(is_spanning_tree(c6, r.tree.edges()));
    CHECK(r.report.max_degree == 2);

    Graph k10 = complete_graph(10);
    auto u = bdst_sparse_pipeline(k10, {}, 0.1, 2);
    CHECK(is_spanning_tree(k10, u.tree.edges()));
    CHECK(u.report.estimated_bound == 2);
    CHECK(u.report.max_degree <= static_cast<int>(std::ceil((1 + 0.7) * 2)) + 2);
    CHECK(u.report.max_degree <= u.report.guarantee);

    Graph star = star_graph(6);
    std::vector<int> b{1, 1, 1, 1, 1, 1};
    CHECK_THROWS_AS(bdst_sparse_pipeline(star, b, 0.1, 1), InvalidInput);

    auto a = bdst_sparse_pipeline(k10, {}, 0.1, 7);
    auto a2 = bdst_sparse_pipeline(k10, {}, 0.1, 7);
    CHECK(a.tree == a2.tree);
}

TEST_CASE("crossing pipeline") {
    Graph c4 = cycle_graph(4);
    auto cs = ConstraintSystem::uniform_degree_bounds(c4, 2);
    auto r = crossing_pipeline(c4, cs, false, 0.1, 1, 30);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(r.outcomes.size() == 30);
    for (const auto& o : r.outcomes) CHECK(o.max_ratio <= 1.0);
    CHECK(r.tree.max_degree(c4) == 2);

    // K6 whose zero-cost Hamiltonian path makes the LP cost zero.
    Graph k6(6);
    for (VertexId u = 0; u < 6; ++u)
        for (VertexId v = u + 1; v < 6; ++v) k6.add_edge(u, v, v == u + 1 ? 0.0 : 10.0);
    auto cs6 = ConstraintSystem::uniform_degree_bounds(k6, 2);
    auto c = crossing_pipeline(k6, cs6, true, 0.1, 3, 40);
    REQUIRE(c.status == SolveStatus::Feasible);
    CHECK(c.report.used_costs);
    bool cheap = false;
    for (const auto& o : c.outcomes) cheap = cheap || o.cost <= 1.1 * c.report.lp_cost + 1e-9;
    CHECK(cheap);
    CHECK(c.tree.cost(k6) <= 1.1 * c.report.lp_cost + 1e-9);

    // Threads do not change the answer.
    GeneratorParams p;
    p.n = 12;
    p.m = 30;
    p.bound = 3;
    auto inst = generate_instance("random_gnm", p, 8);
    auto s1 = crossing_pipeline(inst.graph, inst.constraints, false, 0.2, 5, 16, 1);
    auto s4 = crossing_pipeline(inst.graph, inst.constraints, false, 0.2, 5, 16, 4);
    CHECK(s1.tree == s4.tree);
    REQUIRE(s1.outcomes.size() == s4.outcomes.size());
    for (std::size_t i = 0; i < s1.outcomes.size(); ++i) CHECK(s1.outcomes[i].max_ratio == s4.outcomes[i].max_ratio);

    Graph star = star_graph(4);
    std::vector<double> b{1, 1, 1, 1};
    auto inf = crossing_pipeline(star, ConstraintSystem::degree_bounds(star, b), false, 0.1, 1, 5);
    CHECK(inf.status == SolveStatus::Infeasible);
    CHECK(default_crossing_trials(100, 0.1) == static_cast<int>(std::ceil(40 * std::log(100.0))));
}
