#include "treepack/report_json.hpp"

namespace treepack {

using nlohmann::json;

json to_json(const MwuReport& r, bool with_timing) {
    json j{{"iterations", r.iterations},
           {"weight_updates", r.weight_updates},
           {"max_row_updates", r.max_row_updates},
           {"length_updates", r.length_updates},
           {"tree_swaps", r.tree_swaps},
           {"renormalizations", r.renormalizations},
           {"rows", r.rows},
           {"edges", r.edges},
           {"trees", r.trees},
           {"encoding_size", r.encoding_size},
           {"eps", r.eps},
           {"max_violation", r.max_violation},
           {"measured_c", r.measured_c},
           {"slack_c", r.slack_c},
           {"packing_value", r.packing_value},
           {"iteration_bound", r.iteration_bound},
           {"certified_infeasible", r.certified_infeasible},
           {"hit_iteration_cap", r.hit_iteration_cap}};
    if (with_timing) j["wall_ms"] = r.wall_ms;
    return j;
}

json to_json(const MincostReport& r, bool with_timing) {
    json j{{"solver_calls", r.solver_calls}, {"prefix_cost", r.prefix_cost}, {"cost_bound", r.cost_bound},
           {"lp_cost", r.lp_cost},           {"iterations", r.iterations},    {"max_violation", r.max_violation}};
    if (with_timing) j["wall_ms"] = r.wall_ms;
    return j;
}

json to_json(const SparsifyReport& r) {
    return json{{"eps", r.eps},
                {"log_factor", r.log_factor},
                {"original_edges", r.original_edges},
                {"kept_edges", r.kept_edges},
                {"expected_kept", r.expected_kept},
                {"variance_kept", r.variance_kept},
                {"forced_edges", r.forced_edges},
                {"connected", r.connected}};
}

json to_json(const VerifyReport& r, bool with_timing) {
    return json{{"feasible", r.feasible},
                {"connected", r.connected},
                {"scale", r.scale},
                {"max_violation", r.max_violation},
                {"solver", to_json(r.solver, with_timing)}};
}

json to_json(const DegreeWitness& w) {
    return json{{"blocked", w.blocked}, {"components", w.components}, {"lower_bound", w.lower_bound}};
}

json to_json(const TrialOutcome& t) {
    return json{{"trial", t.trial},
                {"cost", t.cost},
                {"max_ratio", t.max_ratio},
                {"max_excess", t.max_excess},
                {"within_cost", t.within_cost}};
}

json to_json(const BdstReport& r, bool with_timing) {
    return json{{"estimated_bound", r.estimated_bound},
                {"guarantee", r.guarantee},
                {"max_degree", r.max_degree},
                {"max_excess", r.max_excess},
                {"attempts", r.attempts},
                {"sparse_edges", r.sparse_edges},
                {"reduce_calls", r.reduce_calls},
                {"sparsify", to_json(r.sparsify)},
                {"verify", to_json(r.verify, with_timing)},
                {"witness", to_json(r.witness)}};
}

json decomposition_to_json(const ImplicitDecomposition& d) {
    json diffs = json::array();
    for (const auto& df : d.diffs) diffs.push_back({{"removed", df.removed}, {"added", df.added}});
    return json{{"n", d.n}, {"base", d.base}, {"deltas", d.deltas}, {"diffs", std::move(diffs)}};
}

}  // namespace treepack
