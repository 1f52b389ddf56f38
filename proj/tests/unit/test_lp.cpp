#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/oracles.hpp"
#include "treepack/dynamic_mst.hpp"
#include "treepack/generators.hpp"
#include "treepack/instance_io.hpp"
#include "treepack/mst.hpp"
#include "treepack/mwu_solver.hpp"

using namespace treepack;

namespace {

MwuOptions opts(double eps, std::uint64_t seed, bool debug = false) {
    MwuOptions o;
    o.eps = eps;
    o.seed = seed;
    o.debug_checks = debug;
    return o;
}

// Max relative load of the combination, replaying trees explicitly.
double explicit_violation(const Graph& g, const ConstraintSystem& cs, const ImplicitDecomposition& d) {
    std::vector<double> y(g.num_edges(), 0.0);
    auto trees = d.expand();
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (EdgeId e : trees[i]) y[e] += d.deltas[i];
    double worst = 0;
    for (int i = 0; i < cs.num_rows(); ++i) {
        double s = 0;
        for (const auto& en : cs.row(i).entries) s += en.coeff * y[en.edge];
        worst = std::max(worst, s / cs.row(i).bound);
    }
    return worst;
}

Graph star(int leaves) { return star_graph(leaves + 1); }

}  // namespace

TEST_CASE("dynamic MST examples") {
    Graph g(3);
    g.add_edge(0, 1);  // e12
    g.add_edge(1, 2);  // e23
    g.add_edge(0, 2);  // e13
    DynamicMst d(g, {1, 2, 3});
    CHECK(d.tree_edges() == std::vector<EdgeId>{0, 1});
    CHECK(d.increase(2, 10).empty());
    auto delta = d.increase(1, 11);
    CHECK(delta.removed == 1);
    CHECK(delta.added == 2);
    CHECK(d.tree_edges() == std::vector<EdgeId>{0, 2});
    CHECK(d.swaps() == 1);
    CHECK_THROWS_AS(d.increase(0, 0.5), InvalidInput);
    d.rescale(0.25);
    CHECK(d.length(2) == doctest::Approx(2.5));
    CHECK(d.tree_edges() == std::vector<EdgeId>{0, 2});
}

TEST_CASE("dynamic MST follows Kruskal under random increases") {
    Rng rng(77);
    for (int rep = 0; rep < 5; ++rep) {
        Graph g = random_connected_graph(25, 70, rng, rep % 2 == 0);
        std::vector<double> len(g.num_edges());
        for (auto& x : len) x = static_cast<double>(1 + rng() % 5);
        DynamicMst d(g, len);
        for (int step = 0; step < 200; ++step) {
            EdgeId e = static_cast<EdgeId>(rng() % g.num_edges());
            len[e] += static_cast<double>(rng() % 3);
            auto delta = d.increase(e, len[e]);
            auto ref = mst(g, len).edges();
            REQUIRE(d.tree_edges() == ref);
            if (!delta.empty()) CHECK(delta.removed == e);
        }
    }
}

TEST_CASE("dynamic MST with an active mask") {
    Graph g = complete_graph(5);
    std::vector<char> active(g.num_edges(), 1);
    active[0] = active[1] = 0;
    std::vector<double> len(g.num_edges(), 1.0);
    DynamicMst d(g, len, active);
    for (EdgeId e : d.tree_edges()) CHECK(active[e]);
    auto ref = mst(g, len, active).edges();
    CHECK(d.tree_edges() == ref);
}

TEST_CASE("gamma index queries") {
    GammaIndex s(4);
    s.set(0, 0.5);
    s.set(1, 1.5);
    s.set(2, 0.25);
    s.set(3, 1.0);
    std::vector<int> out;
    s.at_least(0, out);
    CHECK(out.size() == 4);
    s.at_least(s.max() + 1e-9, out);
    CHECK(out.empty());
    CHECK(s.max() == 1.5);
    s.at_least(0.75, out);
    std::sort(out.begin(), out.end());
    CHECK(out == std::vector<int>{1, 3});
    s.add(1, -1.5);
    CHECK(s.value(1) == 0);
    s.at_least(0, out);
    CHECK(out.size() == 3);  // zero rows are never reported

    Rng rng(2);
    GammaIndex r(50);
    std::vector<double> v(50, 0.0);
    for (int step = 0; step < 2000; ++step) {
        int i = static_cast<int>(rng() % 50);
        v[i] = static_cast<double>(rng() % 7) / 3.0;
        r.set(i, v[i]);
        double thr = static_cast<double>(rng() % 8) / 3.0;
        r.at_least(thr, out);
        std::vector<int> scan;
        for (int j = 0; j < 50; ++j)
            if (v[j] >= thr && v[j] > 0) scan.push_back(j);
        std::sort(out.begin(), out.end());
        REQUIRE(out == scan);
        CHECK(r.max() == *std::max_element(v.begin(), v.end()));
    }
}

TEST_CASE("star with center bound one is infeasible") {
    Graph g = star(3);
    std::vector<double> b{1, 1, 1, 1};
    auto cs = ConstraintSystem::degree_bounds(g, b);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto r = solve_feasibility(g, cs, opts(0.1, seed));
        CHECK(r.status == SolveStatus::Infeasible);
    }
}

TEST_CASE("C4 with degree bound two is feasible") {
    Graph g = cycle_graph(4);
    auto cs = ConstraintSystem::uniform_degree_bounds(g, 2);
    auto r = solve_feasibility(g, cs, opts(0.1, 1, true));
    REQUIRE(r.feasible());
    r.decomposition.validate(g);
    CHECK(r.decomposition.delta_sum() == doctest::Approx(1.0).epsilon(1e-9));
    double viol = explicit_violation(g, cs, r.decomposition);
    CHECK(viol <= 1 + kFeasibilitySlack * 0.1 + 1e-9);
    CHECK(viol == doctest::Approx(r.report.max_violation).epsilon(1e-9));
    for (double d : cs.loads(r.marginals)) CHECK(d <= 2.2 + 1e-9);
}

TEST_CASE("K4 with degree bound two is feasible and matches the exact LP") {
    Graph g = complete_graph(4);
    auto cs = ConstraintSystem::uniform_degree_bounds(g, 2);
    CHECK(oracle::packing_value(g, cs) >= 1 - 1e-9);
    auto r = solve_feasibility(g, cs, opts(0.05, 3, true));
    REQUIRE(r.feasible());
    CHECK(explicit_violation(g, cs, r.decomposition) <= 1 + kFeasibilitySlack * 0.05 + 1e-9);
    CHECK(r.report.iterations <= r.report.iteration_bound);
}

TEST_CASE("solver rejects bad arguments") {
    Graph g = cycle_graph(4);
    auto cs = ConstraintSystem::uniform_degree_bounds(g, 2);
    CHECK_THROWS_AS(solve_feasibility(g, cs, opts(0.0, 1)), InvalidInput);
    CHECK_THROWS_AS(solve_feasibility(g, cs, opts(1.0, 1)), InvalidInput);
    Graph disc(4);
    disc.add_edge(0, 1);
    disc.add_edge(2, 3);
    auto cs2 = ConstraintSystem::uniform_degree_bounds(disc, 2);
    CHECK_THROWS_AS(solve_feasibility(disc, cs2, opts(0.1, 1)), InvalidInput);
}

TEST_CASE("solver output is deterministic per seed") {
    GeneratorParams p;
    p.n = 15;
    p.m = 40;
    p.bound = 3;
    auto inst = generate_instance("random_gnm", p, 5);
    auto a = solve_feasibility(inst.graph, inst.constraints, opts(0.2, 9));
    auto b = solve_feasibility(inst.graph, inst.constraints, opts(0.2, 9));
    CHECK(a.status == b.status);
    CHECK(decomposition_to_string(a.decomposition) == decomposition_to_string(b.decomposition));
    CHECK(a.report.iterations == b.report.iterations);
}

TEST_CASE("solver invariants on random instances") {
    Rng rng(123);
    for (int rep = 0; rep < 12; ++rep) {
        GeneratorParams p;
        p.n = 5 + static_cast<int>(rng() % 4);
        p.m = p.n + static_cast<int>(rng() % (p.n + 1));
        p.bound = 0;
        auto inst = generate_instance("random_gnm", p, rng());
        const Graph& g = inst.graph;
        int bstar = brute_force_min_max_degree(g);
        auto cs = ConstraintSystem::uniform_degree_bounds(g, bstar);
        double eps = rep % 3 == 0 ? 0.05 : (rep % 3 == 1 ? 0.1 : 0.3);
        auto r = solve_feasibility(g, cs, opts(eps, rng(), true));
        CHECK(r.feasible());
        if (!r.feasible()) continue;
        r.decomposition.validate(g);
        CHECK(explicit_violation(g, cs, r.decomposition) <= 1 + kFeasibilitySlack * eps + 1e-9);
        CHECK(r.report.iterations <= r.report.iteration_bound);
        int k = cs.num_rows();
        CHECK(r.report.max_row_updates <= 16.0 * std::log(k) / (eps * eps) + 1);
        // Marginals streamed from the diff log equal the explicit replay.
        auto z = r.decomposition.marginal_values(g.num_edges());
        std::vector<double> y(g.num_edges(), 0.0);
        auto trees = r.decomposition.expand();
        for (std::size_t i = 0; i < trees.size(); ++i)
            for (EdgeId e : trees[i]) y[e] += r.decomposition.deltas[i];
        for (int e = 0; e < g.num_edges(); ++e) CHECK(z[e] == doctest::Approx(y[e]).epsilon(1e-9));
    }
}

TEST_CASE("C4 canaries are infeasible") {
    Graph g = cycle_graph(4);  // edges (0,1) (1,2) (2,3) (3,0)
    // Cut around {0, 2}: every edge crosses it.
    ConstraintSystem cut(4, {ConstraintRow{1.0, {{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}}}});
    // Three cycle edges: every tree uses at least two of them.
    ConstraintSystem three(4, {ConstraintRow{1.0, {{0, 1.0}, {1, 1.0}, {2, 1.0}}}});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (double eps : {0.05, 0.1, 0.3}) {
            CHECK(solve_feasibility(g, cut, opts(eps, seed)).status == SolveStatus::Infeasible);
            CHECK(solve_feasibility(g, three, opts(eps, seed)).status == SolveStatus::Infeasible);
        }
    }
}

TEST_CASE("general packing rows") {
    GeneratorParams p;
    p.n = 8;
    p.m = 16;
    p.cuts = 3;
    p.cut_bound = 3;
    auto inst = generate_instance("laminar_cuts", p, 4);
    double value = oracle::packing_value(inst.graph, inst.constraints);
    auto r = solve_feasibility(inst.graph, inst.constraints, opts(0.1, 2, true));
    if (value >= 1 - 1e-9) {
        CHECK(r.feasible());
    }
    if (r.feasible()) {
        CHECK(explicit_violation(inst.graph, inst.constraints, r.decomposition) <= 1 + kFeasibilitySlack * 0.1 + 1e-9);
        // The exact optimum lies within the accepted slack.
        CHECK(value >= 1.0 / (1 + kFeasibilitySlack * 0.1) - 1e-9);
    }
}

TEST_CASE("single row is solved exactly") {
    Graph g = complete_graph(4);
    ConstraintSystem cs(6, {ConstraintRow{2.0, {{0, 1.0}, {1, 1.0}, {2, 1.0}}}});
    auto r = solve_feasibility(g, cs, opts(0.1, 1));
    REQUIRE(r.feasible());
    CHECK(r.report.max_violation <= 1 + 1e-12);
}

TEST_CASE("mincost examples") {
    // All costs zero: the budget is zero.
    Graph k4 = complete_graph(4);
    auto cs4 = ConstraintSystem::uniform_degree_bounds(k4, 2);
    auto z = solve_mincost(k4, cs4, opts(0.1, 1));
    REQUIRE(z.feasible());
    CHECK(z.report.cost_bound == 0);
    CHECK(z.report.lp_cost == 0);

    // C4 plus an expensive chord.
    Graph c(4);
    c.add_edge(0, 1, 1);
    c.add_edge(1, 2, 1);
    c.add_edge(2, 3, 1);
    c.add_edge(3, 0, 1);
    c.add_edge(0, 2, 100);
    auto csc = ConstraintSystem::uniform_degree_bounds(c, 2);
    double opt = oracle::min_cost_lp(c, csc);
    CHECK(opt == doctest::Approx(3.0));
    auto r = solve_mincost(c, csc, opts(0.1, 1));
    REQUIRE(r.feasible());
    CHECK(r.report.lp_cost <= 1.1 * opt + 1e-9);
    CHECK(r.marginals[4] < 0.05);
    CHECK(r.report.max_violation <= 1 + kFeasibilitySlack * 0.1 + 1e-9);

    // Star with center bound one stays infeasible whatever the costs.
    Graph s(4);
    s.add_edge(0, 1, 5);
    s.add_edge(0, 2, 1);
    s.add_edge(0, 3, 2);
    std::vector<double> b{1, 1, 1, 1};
    auto css = ConstraintSystem::degree_bounds(s, b);
    CHECK(solve_mincost(s, css, opts(0.1, 1)).status == SolveStatus::Infeasible);
}

TEST_CASE("mincost against the exact LP on random costed graphs") {
    Rng rng(55);
    for (int rep = 0; rep < 6; ++rep) {
        GeneratorParams p;
        p.n = 5 + static_cast<int>(rng() % 2);
        p.m = p.n + 3;
        p.max_cost = 9;
        auto inst = generate_instance("random_gnm", p, rng());
        int bstar = brute_force_min_max_degree(inst.graph);
        auto cs = ConstraintSystem::uniform_degree_bounds(inst.graph, bstar + 1);
        double opt = oracle::min_cost_lp(inst.graph, cs);
        auto r = solve_mincost(inst.graph, cs, opts(0.1, rng()));
        REQUIRE(r.feasible());
        // The budget row itself carries the solver slack.
        CHECK(r.report.lp_cost <= (1 + 0.1) * (1 + kFeasibilitySlack * 0.1) * opt + 1e-6);
        CHECK(r.report.max_violation <= 1 + kFeasibilitySlack * 0.1 + 1e-9);
    }
}
