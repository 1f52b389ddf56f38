#include "treepack/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treepack/decompose.hpp"
#include "treepack/generators.hpp"
#include "treepack/instance_io.hpp"
#include "treepack/mst.hpp"
#include "treepack/report_json.hpp"
#include "treepack/swap_round.hpp"

namespace treepack::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string instance;
    double eps = 0.1;
    std::uint64_t seed = 1;
    int trials = 0;
    int jobs = 1;
    std::string merge_backend = "naive";
    std::string dynmst_backend = "naive";
    std::string format = "json";
    std::uint64_t limit = 1'000'000;
    bool timing = false;
    std::string out_path;
    std::string x_path;
    std::string decomposition_path;
    bool nonuniform = false;
    bool costs = false;
    // gen
    std::string kind = "random_gnm";
    GeneratorParams gen;
};

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
    int code;
};

json tree_json(const Graph& g, const SpanningTree& t) {
    if (!is_spanning_tree(g, t.edges())) throw InternalError("emitted edge set is not a spanning tree");
    return json{{"edges", t.edges()}, {"max_degree", t.max_degree(g)}, {"cost", t.cost(g)}};
}

json sparse_vector(const FractionalEdgeVector& x) {
    json a = json::array();
    for (EdgeId e = 0; e < x.size(); ++e)
        if (x[e] > 0) a.push_back({e, x[e]});
    return a;
}

FractionalEdgeVector read_point(const std::string& path, int m) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::vector<double> x(m, 0.0);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag)) continue;
        long long e;
        double v;
        std::string extra;
        if (tag != "x" || !(ls >> e >> v) || (ls >> extra)) throw ParseError(line, "expected 'x <edge_id> <value>'");
        if (e < 0 || e >= m) throw ParseError(line, "edge id out of range");
        if (!(v >= 0 && v <= 1)) throw ParseError(line, "value out of [0,1]");
        x[e] = v;
    }
    return FractionalEdgeVector(std::move(x));
}

MwuOptions solver_options(const Options& o) {
    MwuOptions m;
    m.eps = o.eps;
    m.seed = o.seed;
    return m;
}

void emit(std::ostream& out, const Options& o, json j, const std::string& text) {
    if (o.format == "json") {
        j["schema"] = 1;
        out << j.dump(2) << '\n';
    } else {
        out << text;
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::string ids_text(const std::vector<EdgeId>& ids) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i];
    return os.str();
}

int cmd_solve_lp(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    MwuResult r = solve_feasibility(inst.graph, inst.constraints, solver_options(o));
    bool ok = r.feasible();
    if (ok && !o.out_path.empty()) {
        std::ofstream f(o.out_path);
        write_decomposition(f, r.decomposition);
    }
    json j{{"verb", "solve-lp"}, {"status", ok ? "Feasible" : "Infeasible"}, {"report", to_json(r.report, o.timing)}};
    if (ok) j["marginals"] = sparse_vector(r.marginals);
    std::string text = std::string("status ") + (ok ? "Feasible" : "Infeasible") + "\nmax_violation " +
                       fmt(r.report.max_violation) + "\niterations " + std::to_string(r.report.iterations) +
                       "\ntrees " + std::to_string(r.report.trees) + "\n";
    emit(out, o, j, text);
    return ok ? kSuccess : kInfeasible;
}

int cmd_solve_mincost(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    MincostResult r = solve_mincost(inst.graph, inst.constraints, solver_options(o));
    bool ok = r.feasible();
    if (ok && !o.out_path.empty()) {
        std::ofstream f(o.out_path);
        write_decomposition(f, r.decomposition);
    }
    json j{{"verb", "solve-mincost"}, {"status", ok ? "Feasible" : "Infeasible"}, {"report", to_json(r.report, o.timing)}};
    if (ok) j["marginals"] = sparse_vector(r.marginals);
    std::string text = std::string("status ") + (ok ? "Feasible" : "Infeasible") + "\nlp_cost " +
                       fmt(r.report.lp_cost) + "\ncost_bound " + fmt(r.report.cost_bound) + "\n";
    emit(out, o, j, text);
    return ok ? kSuccess : kInfeasible;
}

// Decomposition from --decomposition, else from --x, else from the LP.
bool obtain_decomposition(const Options& o, const Instance& inst, ImplicitDecomposition& d, json& info) {
    if (!o.decomposition_path.empty()) {
        std::ifstream f(o.decomposition_path);
        if (!f) throw InvalidInput("cannot open " + o.decomposition_path);
        d = parse_decomposition(f);
        d.validate(inst.graph);
        info = json{{"source", "file"}};
        return true;
    }
    if (!o.x_path.empty()) {
        FractionalEdgeVector x = read_point(o.x_path, inst.graph.num_edges());
        DecomposeResult r = implicit_decompose(inst.graph, x, o.eps, o.seed);
        info = json{{"source", "point"}, {"report", to_json(r.report, o.timing)}};
        if (!r.ok()) return false;
        d = std::move(r.decomposition);
        return true;
    }
    MwuResult r = solve_feasibility(inst.graph, inst.constraints, solver_options(o));
    info = json{{"source", "lp"}, {"report", to_json(r.report, o.timing)}};
    if (!r.feasible()) return false;
    d = std::move(r.decomposition);
    return true;
}

int cmd_decompose(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    ImplicitDecomposition d;
    json info;
    bool ok = obtain_decomposition(o, inst, d, info);
    if (ok && !o.out_path.empty()) {
        std::ofstream f(o.out_path);
        write_decomposition(f, d);
    }
    json j{{"verb", "decompose"}, {"status", ok ? "Decomposed" : "NotInPolytope"}, {"info", info}};
    std::string text = "NotInPolytope\n";
    if (ok) {
        j["decomposition"] = decomposition_to_json(d);
        j["marginals"] = sparse_vector(d.marginals(inst.graph.num_edges()));
        text = decomposition_to_string(d);
    }
    emit(out, o, j, text);
    return ok ? kSuccess : kInfeasible;
}

int cmd_round(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    const Graph& g = inst.graph;
    ImplicitDecomposition d;
    json info;
    if (!obtain_decomposition(o, inst, d, info)) {
        emit(out, o, json{{"verb", "round"}, {"status", "NotInPolytope"}, {"info", info}}, "NotInPolytope\n");
        return kInfeasible;
    }
    int trials = std::max(1, o.trials);
    std::vector<long long> hits(g.num_edges(), 0);
    json trees = json::array();
    SpanningTree last;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(o.seed, 0x726f756e64ULL, static_cast<std::uint64_t>(t)));
        SpanningTree tree = fast_swap(g, d, rng);
        if (!is_spanning_tree(g, tree.edges())) throw InternalError("rounding produced a non-tree");
        for (EdgeId e : tree.edges()) ++hits[e];
        if (trials <= 16) trees.push_back(tree.edges());
        last = std::move(tree);
    }
    auto z = d.marginal_values(g.num_edges());
    json marg = json::array();
    std::ostringstream text;
    if (trials == 1) text << "tree " << ids_text(last.edges()) << '\n';
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        double freq = static_cast<double>(hits[e]) / trials;
        marg.push_back({{"edge", e}, {"empirical", freq}, {"expected", z[e]}});
        if (trials > 1) text << "e " << e << ' ' << fmt(freq) << ' ' << fmt(z[e]) << '\n';
    }
    json j{{"verb", "round"}, {"status", "Tree"}, {"trials", trials}, {"marginals", marg}, {"info", info}};
    if (trials <= 16) j["trees"] = trees;
    if (trials == 1) j["tree"] = tree_json(g, last);
    emit(out, o, j, text.str());
    return kSuccess;
}

int cmd_sparsify(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    MwuResult r = solve_feasibility(inst.graph, inst.constraints, solver_options(o));
    if (!r.feasible()) {
        emit(out, o, json{{"verb", "sparsify"}, {"status", "Infeasible"}, {"report", to_json(r.report, o.timing)}},
             "status Infeasible\n");
        return kInfeasible;
    }
    SparsifyResult s = sparsify(inst.graph, inst.constraints, r.marginals, o.eps, derive_seed(o.seed, 2));
    VerifyReport v = verify_sparsified(s, o.eps, derive_seed(o.seed, 3));
    if (!o.out_path.empty()) save_instance(o.out_path, Instance{s.subgraph, s.constraints});
    json j{{"verb", "sparsify"},
           {"status", v.feasible ? "Feasible" : "Infeasible"},
           {"sparsify", to_json(s.report)},
           {"verify", to_json(v, o.timing)},
           {"original_ids", s.original_ids}};
    std::string text = "kept " + std::to_string(s.report.kept_edges) + " of " + std::to_string(s.report.original_edges) +
                       "\nexpected " + fmt(s.report.expected_kept) + "\nverified " + (v.feasible ? "Feasible" : "Infeasible") + "\n";
    emit(out, o, j, text);
    return v.feasible ? kSuccess : kInfeasible;
}

std::vector<int> instance_degree_bounds(const Instance& inst) {
    std::vector<double> b;
    if (!inst.constraints.as_degree_bounds(inst.graph, b))
        throw InvalidInput("--nonuniform needs an instance whose rows are all vertex degree rows");
    std::vector<int> out;
    for (double v : b) out.push_back(static_cast<int>(std::floor(v + 1e-9)));
    return out;
}

int cmd_min_degree(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    const Graph& g = inst.graph;
    if (!g.connected()) throw InvalidInput("graph is disconnected");
    if (o.nonuniform) {
        auto b = instance_degree_bounds(inst);
        NonuniformResult r = fr_nonuniform(g, b);
        bool ok = r.status == NonuniformStatus::Tree;
        json j{{"verb", "min-degree"}, {"status", ok ? "Tree" : "Infeasible"}, {"reduce_calls", r.reduce_calls},
               {"witness", to_json(r.witness)}};
        std::string text = ok ? "tree " + ids_text(r.tree.edges()) + "\n" : "Infeasible\n";
        if (ok) {
            j["tree"] = tree_json(g, r.tree);
            j["max_excess"] = r.max_excess;
        }
        emit(out, o, j, text);
        return ok ? kSuccess : kInfeasible;
    }
    FrResult r = fr_min_degree(g);
    json j{{"verb", "min-degree"}, {"status", "Tree"}, {"tree", tree_json(g, r.tree)}, {"witness", to_json(r.witness)},
           {"reduce_calls", r.reduce_calls}};
    emit(out, o, j,
         "max_degree " + std::to_string(r.max_degree) + "\nlower_bound " + std::to_string(r.witness.lower_bound) +
             "\ntree " + ids_text(r.tree.edges()) + "\n");
    return kSuccess;
}

int cmd_estimate_degree(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    DegreeEstimate e = estimate_min_degree(inst.graph, o.eps, o.seed);
    json j{{"verb", "estimate-degree"}, {"bound", e.bound}, {"solver_calls", e.solver_calls},
           {"report", to_json(e.solution.report, o.timing)}};
    emit(out, o, j, "B=" + std::to_string(e.bound) + "\n");
    return kSuccess;
}

int cmd_bdst(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    std::vector<int> bounds;
    if (o.nonuniform) bounds = instance_degree_bounds(inst);
    BdstResult r;
    try {
        r = bdst_sparse_pipeline(inst.graph, bounds, o.eps, o.seed);
    } catch (const InvalidInput& ex) {
        emit(out, o, json{{"verb", "bdst"}, {"status", "Infeasible"}, {"error", ex.what()}}, "Infeasible\n");
        return kInfeasible;
    }
    json j{{"verb", "bdst"}, {"status", "Tree"}, {"tree", tree_json(inst.graph, r.tree)}, {"report", to_json(r.report, o.timing)}};
    emit(out, o, j,
         "max_degree " + std::to_string(r.report.max_degree) + "\nguarantee " + std::to_string(r.report.guarantee) +
             "\ntree " + ids_text(r.tree.edges()) + "\n");
    return kSuccess;
}

int cmd_crossing(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    CrossingResult r = crossing_pipeline(inst.graph, inst.constraints, o.costs, o.eps, o.seed, o.trials, o.jobs);
    if (r.status != SolveStatus::Feasible) {
        emit(out, o, json{{"verb", "crossing"}, {"status", "Infeasible"}}, "Infeasible\n");
        return kInfeasible;
    }
    json trials = json::array();
    for (const auto& t : r.outcomes) trials.push_back(to_json(t));
    json rep{{"trials", r.report.trials},
             {"lp_cost", r.report.lp_cost},
             {"used_costs", r.report.used_costs},
             {"passing_trials", r.report.passing_trials},
             {"best", to_json(r.report.best)}};
    if (r.report.used_costs)
        rep["mincost"] = to_json(r.report.mincost, o.timing);
    else
        rep["solver"] = to_json(r.report.solver, o.timing);
    json j{{"verb", "crossing"}, {"status", "Tree"}, {"tree", tree_json(inst.graph, r.tree)}, {"report", rep},
           {"outcomes", trials}, {"seed", o.seed}};
    emit(out, o, j,
         "best_trial " + std::to_string(r.report.best.trial) + "\nmax_ratio " + fmt(r.report.best.max_ratio) +
             "\ncost " + fmt(r.report.best.cost) + "\ntree " + ids_text(r.tree.edges()) + "\n");
    return kSuccess;
}

int cmd_gen(const Options& o, std::ostream& out) {
    Instance inst = generate_instance(o.kind, o.gen, o.seed);
    if (!o.out_path.empty()) {
        save_instance(o.out_path, inst);
        return kSuccess;
    }
    if (o.format == "json")
        out << instance_to_json(inst).dump(2) << '\n';
    else
        write_instance(out, inst);
    return kSuccess;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    const Graph& g = inst.graph;
    const ConstraintSystem& cs = inst.constraints;
    std::uint64_t count = 0;
    int best_degree = -1;
    double best_ratio = -1;
    std::vector<int> deg(g.num_vertices());
    try {
        count = for_each_spanning_tree(
            g,
            [&](const std::vector<EdgeId>& ids) {
                std::fill(deg.begin(), deg.end(), 0);
                int mx = 0;
                for (EdgeId e : ids) {
                    mx = std::max(mx, ++deg[g.edge(e).u]);
                    mx = std::max(mx, ++deg[g.edge(e).v]);
                }
                if (best_degree < 0 || mx < best_degree) best_degree = mx;
                double ratio = cs.max_relative_load(ids);
                if (best_ratio < 0 || ratio < best_ratio) best_ratio = ratio;
            },
            o.limit);
    } catch (const LimitExceeded&) {
        throw Failure(kUsage, "more than " + std::to_string(o.limit) + " spanning trees; raise --limit");
    }
    std::uint64_t kirchhoff = kirchhoff_tree_count(g);
    bool match = kirchhoff == count;
    json j{{"verb", "oracle"},
           {"trees", count},
           {"kirchhoff", kirchhoff},
           {"counts_match", match},
           {"min_max_degree", best_degree},
           {"best_tree_max_ratio", best_ratio},
           {"integral_feasible", best_ratio >= 0 && best_ratio <= 1 + 1e-12}};
    emit(out, o, j,
         "trees " + std::to_string(count) + "\nkirchhoff " + std::to_string(kirchhoff) + "\nmin_max_degree " +
             std::to_string(best_degree) + "\n");
    if (!match) throw InternalError("enumeration and matrix-tree counts differ");
    return kSuccess;
}

int cmd_bench(const Options& o, std::ostream& out) {
    Instance inst = load_instance(o.instance);
    MwuResult r = solve_feasibility(inst.graph, inst.constraints, solver_options(o));
    json j{{"verb", "bench"}, {"status", r.feasible() ? "Feasible" : "Infeasible"}, {"solve", to_json(r.report, true)}};
    if (r.feasible()) {
        int trials = std::max(1, o.trials);
        auto t0 = std::chrono::steady_clock::now();
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(o.seed, 0x62656e6368ULL, static_cast<std::uint64_t>(t)));
            SpanningTree tree = fast_swap(inst.graph, r.decomposition, rng);
            if (!is_spanning_tree(inst.graph, tree.edges())) throw InternalError("rounding produced a non-tree");
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        j["round"] = json{{"trials", trials}, {"wall_ms", ms}, {"per_trial_ms", ms / trials}};
    }
    emit(out, o, j, "solve_ms " + fmt(r.report.wall_ms) + "\n");
    return r.feasible() ? kSuccess : kInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Spanning tree packing, decomposition and rounding"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "treepack 0.1.0");

    auto common = [&](CLI::App* sub, bool needs_instance) {
        if (needs_instance) sub->add_option("instance", o.instance, "Instance file (.json or text)")->required();
        sub->add_option("--eps", o.eps, "Accuracy parameter in (0,1)")->check(CLI::Range(1e-6, 0.999999));
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--trials", o.trials, "Number of rounding trials")->check(CLI::NonNegativeNumber);
        sub->add_option("--jobs", o.jobs, "Worker threads for trials")->check(CLI::PositiveNumber);
        sub->add_option("--merge-backend", o.merge_backend, "Merge backend")->check(CLI::IsMember({"naive", "fast"}));
        sub->add_option("--dynmst-backend", o.dynmst_backend, "Dynamic MST backend")->check(CLI::IsMember({"naive", "fast"}));
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--limit", o.limit, "Enumeration limit");
        sub->add_flag("--timing", o.timing, "Include wall-clock times in reports");
        sub->add_option("--out", o.out_path, "Write the main artifact to this file");
    };

    std::map<std::string, int (*)(const Options&, std::ostream&)> handlers{
        {"solve-lp", cmd_solve_lp},   {"solve-mincost", cmd_solve_mincost}, {"decompose", cmd_decompose},
        {"round", cmd_round},         {"sparsify", cmd_sparsify},           {"min-degree", cmd_min_degree},
        {"estimate-degree", cmd_estimate_degree}, {"bdst", cmd_bdst},       {"crossing", cmd_crossing},
        {"gen", cmd_gen},             {"oracle", cmd_oracle},               {"bench", cmd_bench}};
    std::map<std::string, std::string> help{
        {"solve-lp", "Packing LP feasibility over the spanning tree polytope"},
        {"solve-mincost", "Minimum cost version of the packing LP"},
        {"decompose", "Write a point (--x file, else the LP solution) as a convex combination of trees"},
        {"round", "Swap-round a decomposition into spanning trees"},
        {"sparsify", "Sample a sparse subgraph that still supports the LP"},
        {"min-degree", "Local search for a low maximum degree spanning tree"},
        {"estimate-degree", "LP estimate of the minimum maximum degree"},
        {"bdst", "Bounded degree spanning tree via LP, sparsification and local search"},
        {"crossing", "Low crossing spanning tree via LP and repeated rounding"},
        {"gen", "Generate an instance"},
        {"oracle", "Enumeration checks on a small instance"},
        {"bench", "Time the solver and the rounding"}};

    for (const auto& [name, _] : handlers) {
        CLI::App* sub = app.add_subcommand(name, help[name]);
        common(sub, name != "gen");
        if (name == "decompose" || name == "round") {
            sub->add_option("--x", o.x_path, "Point file with lines 'x <edge_id> <value>'");
            sub->add_option("--decomposition", o.decomposition_path, "Decomposition file to read");
        }
        if (name == "min-degree" || name == "bdst")
            sub->add_flag("--nonuniform", o.nonuniform, "Use the instance's degree rows as per-vertex bounds");
        if (name == "crossing") sub->add_flag("--costs", o.costs, "Minimize cost subject to the rows");
        if (name == "gen") {
            sub->add_option("--kind", o.kind, "Generator")
                ->check(CLI::IsMember({"random_gnm", "complete", "star", "cycle", "laminar_cuts"}));
            sub->add_option("--n", o.gen.n, "Vertices")->check(CLI::PositiveNumber);
            sub->add_option("--m", o.gen.m, "Edges (random_gnm, laminar_cuts)");
            sub->add_option("--bound", o.gen.bound, "Uniform degree bound (0: no degree rows)");
            sub->add_option("--center-bound", o.gen.center_bound, "Degree bound of the star center");
            sub->add_option("--cuts", o.gen.cuts, "Number of nested cut rows (laminar_cuts)");
            sub->add_option("--cut-bound", o.gen.cut_bound, "Bound of each cut row");
            sub->add_option("--max-cost", o.gen.max_cost, "Integer costs in [1, max] (0: zero costs)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion& e) {
        out << "treepack 0.1.0\n";
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    std::string verb = app.get_subcommands().front()->get_name();
    try {
        if (o.merge_backend == "fast" || o.dynmst_backend == "fast")
            throw Failure(kUsage, "the fast backends are not available in this build; use naive");
        return handlers.at(verb)(o, out);
    } catch (const Failure& f) {
        err << "error: " << f.what() << '\n';
        return f.code;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const LimitExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace treepack::cli
