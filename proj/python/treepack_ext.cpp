#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treepack/decompose.hpp"
#include "treepack/furer_raghavachari.hpp"
#include "treepack/generators.hpp"
#include "treepack/instance_io.hpp"
#include "treepack/mst.hpp"
#include "treepack/mwu_solver.hpp"
#include "treepack/pipelines.hpp"
#include "treepack/sparsify.hpp"
#include "treepack/swap_round.hpp"

namespace py = pybind11;
using namespace treepack;

namespace {

const char* status_name(SolveStatus s) { return s == SolveStatus::Feasible ? "Feasible" : "Infeasible"; }

py::dict report_dict(const MwuReport& r) {
    py::dict d;
    d["iterations"] = r.iterations;
    d["max_row_updates"] = r.max_row_updates;
    d["rows"] = r.rows;
    d["edges"] = r.edges;
    d["trees"] = r.trees;
    d["encoding_size"] = r.encoding_size;
    d["eps"] = r.eps;
    d["max_violation"] = r.max_violation;
    d["measured_c"] = r.measured_c;
    d["iteration_bound"] = r.iteration_bound;
    d["certified_infeasible"] = r.certified_infeasible;
    return d;
}

MwuOptions options(double eps, std::uint64_t seed) {
    MwuOptions o;
    o.eps = eps;
    o.seed = seed;
    return o;
}

}  // namespace

PYBIND11_MODULE(_treepack, m) {
    m.doc() = "Spanning tree packing, decomposition and swap rounding";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
    py::register_exception<LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);

    py::class_<Edge>(m, "Edge")
        .def_readonly("id", &Edge::id)
        .def_readonly("u", &Edge::u)
        .def_readonly("v", &Edge::v)
        .def_readonly("cost", &Edge::cost);

    py::class_<Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("n"))
        .def("add_edge", &Graph::add_edge, py::arg("u"), py::arg("v"), py::arg("cost") = 0.0)
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def("edge", &Graph::edge, py::return_value_policy::copy)
        .def("connected", &Graph::connected)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
        });

    py::class_<ConstraintSystem>(m, "ConstraintSystem")
        .def_static("degree_bounds",
                    [](const Graph& g, const std::vector<double>& b) { return ConstraintSystem::degree_bounds(g, b); })
        .def_static("uniform_degree_bounds", &ConstraintSystem::uniform_degree_bounds)
        .def_static("from_rows",
                    [](int num_edges, const std::vector<std::pair<double, std::vector<std::pair<int, double>>>>& rows) {
                        std::vector<ConstraintRow> out;
                        for (const auto& [bound, entries] : rows) {
                            ConstraintRow r;
                            r.bound = bound;
                            for (auto [e, c] : entries) r.entries.push_back({e, c});
                            out.push_back(std::move(r));
                        }
                        return ConstraintSystem(num_edges, std::move(out));
                    })
        .def_property_readonly("num_rows", &ConstraintSystem::num_rows)
        .def("max_relative_load",
             [](const ConstraintSystem& cs, const std::vector<double>& x) {
                 return cs.max_relative_load(FractionalEdgeVector(x));
             });

    py::class_<Instance>(m, "Instance")
        .def_readonly("graph", &Instance::graph)
        .def_readonly("constraints", &Instance::constraints);

    m.def("load_instance", &load_instance, py::arg("path"));
    m.def("parse_instance", &parse_instance_string, py::arg("text"));
    m.def("instance_to_string", &instance_to_string);
    m.def(
        "generate_instance",
        [](const std::string& kind, int n, int edges, double bound, std::uint64_t seed) {
            GeneratorParams p;
            p.n = n;
            p.m = edges;
            p.bound = bound;
            return generate_instance(kind, p, seed);
        },
        py::arg("kind"), py::arg("n"), py::arg("m") = 0, py::arg("bound") = 0.0, py::arg("seed") = 1);

    m.def("complete_graph", &complete_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("star_graph", &star_graph);
    m.def("petersen_graph", &petersen_graph);

    m.def("is_spanning_tree", [](const Graph& g, const std::vector<EdgeId>& ids) { return is_spanning_tree(g, ids); });
    m.def("kirchhoff_tree_count", &kirchhoff_tree_count);
    m.def(
        "count_spanning_trees",
        [](const Graph& g, std::uint64_t limit) {
            return for_each_spanning_tree(g, [](const std::vector<EdgeId>&) {}, limit);
        },
        py::arg("g"), py::arg("limit") = 1'000'000);
    m.def("mst", [](const Graph& g, const std::vector<double>& len) { return mst(g, len).edges(); });
    m.def("brute_force_min_max_degree", [](const Graph& g) { return brute_force_min_max_degree(g); });

    m.def(
        "solve_feasibility",
        [](const Graph& g, const ConstraintSystem& cs, double eps, std::uint64_t seed) {
            auto r = solve_feasibility(g, cs, options(eps, seed));
            py::dict d;
            d["status"] = status_name(r.status);
            d["marginals"] = r.marginals.values();
            d["decomposition"] = decomposition_to_string(r.decomposition);
            d["report"] = report_dict(r.report);
            return d;
        },
        py::arg("g"), py::arg("constraints"), py::arg("eps") = 0.1, py::arg("seed") = 1);

    m.def(
        "implicit_decompose",
        [](const Graph& g, const std::vector<double>& x, double eps, std::uint64_t seed) -> py::object {
            auto r = implicit_decompose(g, FractionalEdgeVector(x), eps, seed);
            if (!r.ok()) return py::none();
            return py::str(decomposition_to_string(r.decomposition));
        },
        py::arg("g"), py::arg("x"), py::arg("eps") = 0.1, py::arg("seed") = 1);

    m.def(
        "fast_swap",
        [](const Graph& g, const std::string& decomposition, std::uint64_t seed, int trials) {
            auto d = parse_decomposition_string(decomposition);
            d.validate(g);
            Rng rng(seed);
            std::vector<std::vector<EdgeId>> out;
            for (int t = 0; t < trials; ++t) out.push_back(fast_swap(g, d, rng).edges());
            return out;
        },
        py::arg("g"), py::arg("decomposition"), py::arg("seed") = 1, py::arg("trials") = 1);

    m.def(
        "sparsify",
        [](const Graph& g, const ConstraintSystem& cs, const std::vector<double>& x, double eps, std::uint64_t seed) {
            auto s = sparsify(g, cs, FractionalEdgeVector(x), eps, seed);
            py::dict d;
            d["kept"] = s.original_ids;
            d["expected_kept"] = s.report.expected_kept;
            d["variance_kept"] = s.report.variance_kept;
            d["connected"] = s.report.connected;
            d["verified"] = verify_sparsified(s, eps, seed).feasible;
            return d;
        },
        py::arg("g"), py::arg("constraints"), py::arg("x"), py::arg("eps") = 0.3, py::arg("seed") = 1);

    m.def("fr_min_degree", [](const Graph& g) {
        auto r = fr_min_degree(g);
        py::dict d;
        d["tree"] = r.tree.edges();
        d["max_degree"] = r.max_degree;
        d["blocked"] = r.witness.blocked;
        d["lower_bound"] = r.witness.lower_bound;
        return d;
    });

    m.def(
        "estimate_min_degree",
        [](const Graph& g, double eps, std::uint64_t seed) { return estimate_min_degree(g, eps, seed).bound; },
        py::arg("g"), py::arg("eps") = 0.1, py::arg("seed") = 1);

    m.def(
        "bdst",
        [](const Graph& g, const std::vector<int>& bounds, double eps, std::uint64_t seed) {
            auto r = bdst_sparse_pipeline(g, bounds, eps, seed);
            py::dict d;
            d["tree"] = r.tree.edges();
            d["max_degree"] = r.report.max_degree;
            d["estimated_bound"] = r.report.estimated_bound;
            d["guarantee"] = r.report.guarantee;
            return d;
        },
        py::arg("g"), py::arg("bounds") = std::vector<int>{}, py::arg("eps") = 0.1, py::arg("seed") = 1);

    m.def(
        "crossing",
        [](const Graph& g, const ConstraintSystem& cs, bool use_costs, double eps, std::uint64_t seed, int trials) {
            auto r = crossing_pipeline(g, cs, use_costs, eps, seed, trials);
            py::dict d;
            d["status"] = status_name(r.status);
            d["tree"] = r.tree.edges();
            d["max_ratio"] = r.report.best.max_ratio;
            d["lp_cost"] = r.report.lp_cost;
            return d;
        },
        py::arg("g"), py::arg("constraints"), py::arg("use_costs") = false, py::arg("eps") = 0.1,
        py::arg("seed") = 1, py::arg("trials") = 0);
}
