#include "treepack/mwu_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "treepack/disjoint_set.hpp"
#include "treepack/dynamic_mst.hpp"
#include "treepack/mst.hpp"

namespace treepack {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool active_connected(const Graph& g, const std::vector<char>& active) {
    int n = g.num_vertices();
    if (n <= 1) return true;
    DisjointSet dsu(n);
    int comps = n;
    for (const Edge& e : g.edges())
        if (active[e.id] && dsu.unite(e.u, e.v)) --comps;
    return comps == 1;
}

struct Column {
    int row;
    double a;  // A_ie / b_i
};

class MwuRun {
public:
    MwuRun(const Graph& g, const std::vector<ConstraintRow>& rows, const std::vector<char>& active,
           const MwuOptions& opts)
        : g_(g), rows_(rows), active_(active), opts_(opts), rng_(opts.seed) {}

    MwuResult run();

private:
    void apply_swap(const TreeDelta& d);
    void renormalize();
    void debug_check(const DynamicMst& dm) const;
    double exact_tree_bar(const DynamicMst& dm) const;

    const Graph& g_;
    const std::vector<ConstraintRow>& rows_;
    const std::vector<char>& active_;
    MwuOptions opts_;
    Rng rng_;

    std::vector<std::vector<Column>> cols_;         // per edge
    std::vector<std::vector<RowEntry>> row_cols_;   // per row, normalized, active edges only
    std::vector<double> w_, rho_, rhobar_;
    std::vector<std::int64_t> q_;
    double sum_w_ = 0, tree_bar_ = 0;
    GammaIndex gamma_;
    DynamicMst* dm_ = nullptr;
    std::map<EdgeId, int> pending_;
    MwuReport rep_;
};

void MwuRun::apply_swap(const TreeDelta& d) {
    for (const Column& c : cols_[d.removed]) gamma_.add(c.row, -c.a);
    for (const Column& c : cols_[d.added]) gamma_.add(c.row, c.a);
    tree_bar_ += rhobar_[d.added] - rhobar_[d.removed];
    if (--pending_[d.removed] == 0) pending_.erase(d.removed);
    if (++pending_[d.added] == 0) pending_.erase(d.added);
    ++rep_.tree_swaps;
}

void MwuRun::renormalize() {
    const double f = std::ldexp(1.0, -256);
    for (double& x : w_) x *= f;
    for (double& x : rho_) x *= f;
    for (double& x : rhobar_) x *= f;
    sum_w_ *= f;
    tree_bar_ *= f;
    dm_->rescale(f);
    ++rep_.renormalizations;
}

double MwuRun::exact_tree_bar(const DynamicMst& dm) const {
    double s = 0;
    for (EdgeId e : dm.tree_edges()) s += rhobar_[e];
    return s;
}

void MwuRun::debug_check(const DynamicMst& dm) const {
    const double tol = 1e-9;
    auto tree = dm.tree_edges();
    std::vector<double> gam(rows_.size(), 0.0);
    for (EdgeId e : tree)
        for (const Column& c : cols_[e]) gam[c.row] += c.a;
    for (std::size_t i = 0; i < gam.size(); ++i)
        if (std::abs(gam[i] - gamma_.value(static_cast<int>(i))) > 1e-9 * std::max(1.0, gam[i]))
            throw InternalError("gamma index out of sync");
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
        if (!active_[e]) continue;
        if (rhobar_[e] > rho_[e] * (1 + tol) || rho_[e] > (1 + opts_.eps) * rhobar_[e] * (1 + tol))
            throw InternalError("lazy lengths left the sandwich");
    }
    SpanningTree k = mst(g_, rhobar_, active_);
    double a = 0, b = 0;
    for (EdgeId e : k.edges()) a += rhobar_[e];
    for (EdgeId e : tree) b += rhobar_[e];
    if (std::abs(a - b) > 1e-9 * std::max(1e-300, std::abs(a)) && k.edges() != tree)
        throw InternalError("maintained tree is not a minimum spanning tree");
}

MwuResult MwuRun::run() {
    auto t0 = Clock::now();
    const double eps = opts_.eps;
    int m = g_.num_edges(), n = g_.num_vertices();
    int k = static_cast<int>(rows_.size());
    rep_.rows = k;
    rep_.edges = m;
    rep_.eps = eps;
    rep_.iteration_bound = k >= 2 ? 16.0 * k * std::log(static_cast<double>(k)) / (eps * eps) : 1.0;

    MwuResult res;
    if (!active_connected(g_, active_)) {
        res.status = SolveStatus::Infeasible;
        rep_.wall_ms = ms_since(t0);
        res.report = rep_;
        return res;
    }

    cols_.assign(m, {});
    row_cols_.assign(k, {});
    for (int i = 0; i < k; ++i) {
        if (!(rows_[i].bound > 0)) throw InvalidInput("row bounds must be positive");
        for (const RowEntry& en : rows_[i].entries) {
            if (!active_[en.edge] || en.coeff == 0.0) continue;
            double a = en.coeff / rows_[i].bound;
            cols_[en.edge].push_back({i, a});
            row_cols_[i].push_back({en.edge, a});
        }
    }

    w_.assign(k, 1.0);
    q_.assign(k, 0);
    sum_w_ = k;
    rho_.assign(m, 0.0);
    for (EdgeId e = 0; e < m; ++e)
        for (const Column& c : cols_[e]) rho_[e] += c.a;
    rhobar_ = rho_;
    DynamicMst dm(g_, rhobar_, active_);
    dm_ = &dm;
    gamma_ = GammaIndex(k);
    auto base = dm.tree_edges();
    for (EdgeId e : base) {
        for (const Column& c : cols_[e]) gamma_.add(c.row, c.a);
        tree_bar_ += rhobar_[e];
    }

    ImplicitDecomposition dec;
    dec.n = n;
    dec.base = base;

    const double eta = k >= 1 ? std::log(static_cast<double>(k)) / eps : 0.0;
    const double growth = std::exp(eps);
    std::int64_t cap = opts_.max_iterations > 0
                           ? opts_.max_iterations
                           : static_cast<std::int64_t>(4 * rep_.iteration_bound) + 10000;
    double t = 0;
    std::vector<int> hit;
    bool done = false;
    while (!done) {
        // Every tree has rho-length >= rhobar(T) for the current MST T, while a
        // feasible y would give sum_e y_e rho_e <= sum_i w_i.
        if (tree_bar_ > sum_w_ * (1 + 1e-9)) {
            double exact_w = 0;
            for (double x : w_) exact_w += x;
            double exact_t = exact_tree_bar(dm);
            sum_w_ = exact_w;
            tree_bar_ = exact_t;
            if (exact_t > exact_w * (1 + 1e-9)) {
                rep_.certified_infeasible = true;
                break;
            }
        }

        double gmax = gamma_.max();
        double remaining = 1.0 - t;
        double delta = remaining;
        if (gmax > 0 && eta > 0) delta = std::min(eps / (eta * gmax), remaining);
        if (delta >= remaining) done = true;

        if (dec.deltas.empty()) {
            dec.deltas.push_back(delta);
        } else if (!pending_.empty()) {
            TreeDiff d;
            for (auto [e, s] : pending_) (s < 0 ? d.removed : d.added).push_back(e);
            dec.diffs.push_back(std::move(d));
            dec.deltas.push_back(delta);
            pending_.clear();
        } else {
            dec.deltas.back() += delta;
        }
        t = done ? 1.0 : t + delta;
        ++rep_.iterations;
        if (done) break;
        if (rep_.iterations >= cap) {
            rep_.hit_iteration_cap = true;
            break;
        }

        double theta = uniform01(rng_);
        gamma_.at_least(theta * eps / (delta * eta), hit);
        for (int i : hit) {
            ++q_[i];
            ++rep_.weight_updates;
            rep_.max_row_updates = std::max(rep_.max_row_updates, q_[i]);
            double w_old = w_[i];
            double w_new = w_old * growth;
            w_[i] = w_new;
            sum_w_ += w_new - w_old;
            double dw = w_new - w_old;
            for (const RowEntry& en : row_cols_[i]) {
                EdgeId e = en.edge;
                rho_[e] += en.coeff * dw;
                if (rho_[e] >= (1 + eps) * rhobar_[e]) {
                    if (dm.in_tree(e)) tree_bar_ += rho_[e] - rhobar_[e];
                    rhobar_[e] = rho_[e];
                    ++rep_.length_updates;
                    TreeDelta d = dm.increase(e, rhobar_[e]);
                    if (!d.empty()) apply_swap(d);
                }
            }
            if (w_new > 0x1.0p512) renormalize();
        }
        if (opts_.debug_checks) debug_check(dm);
    }
    dm_ = nullptr;

    // A certificate at the start leaves no recorded step; keep the MST.
    if (dec.deltas.empty()) dec.deltas.push_back(1.0);
    // Normalize so the coefficients sum to exactly one.
    double total = dec.delta_sum();
    for (double& d : dec.deltas) d /= total;
    dec.deltas.back() = std::max(0.0, 1.0 - (dec.delta_sum() - dec.deltas.back()));
    for (auto& d : dec.diffs) {
        std::sort(d.removed.begin(), d.removed.end());
        std::sort(d.added.begin(), d.added.end());
    }

    auto z = dec.marginal_values(m);
    double lam = 0;
    for (int i = 0; i < k; ++i) {
        double load = 0;
        for (const RowEntry& en : rows_[i].entries)
            if (active_[en.edge]) load += en.coeff * z[en.edge];
        lam = std::max(lam, load / rows_[i].bound);
    }
    rep_.max_violation = lam;
    rep_.measured_c = std::max(0.0, lam - 1.0) / eps;
    rep_.packing_value = lam > 0 ? 1.0 / lam : 0.0;
    rep_.trees = dec.num_trees();
    rep_.encoding_size = dec.encoding_size();

    bool ok = !rep_.certified_infeasible && !rep_.hit_iteration_cap && lam <= 1.0 + kFeasibilitySlack * eps + 1e-12;
    res.status = ok ? SolveStatus::Feasible : SolveStatus::Infeasible;
    for (double& v : z) v = std::clamp(v, 0.0, 1.0);
    res.marginals = FractionalEdgeVector(std::move(z));
    res.decomposition = std::move(dec);
    rep_.wall_ms = ms_since(t0);
    res.report = rep_;
    return res;
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0, 1)");
}

}  // namespace

MwuResult solve_packing(const Graph& g, const std::vector<ConstraintRow>& rows, const std::vector<char>& active,
                        const MwuOptions& opts) {
    check_eps(opts.eps);
    if (static_cast<int>(active.size()) != g.num_edges()) throw InvalidInput("active mask size mismatch");
    if (g.num_vertices() == 0) throw InvalidInput("empty graph");
    MwuRun run(g, rows, active, opts);
    return run.run();
}

MwuResult solve_feasibility(const Graph& g, const ConstraintSystem& cs, const MwuOptions& opts) {
    if (cs.num_edges() != g.num_edges()) throw InvalidInput("constraint system does not match graph");
    if (!g.connected()) throw InvalidInput("graph is disconnected");
    std::vector<char> all(g.num_edges(), 1);
    return solve_packing(g, cs.rows(), all, opts);
}

MincostResult solve_mincost(const Graph& g, const ConstraintSystem& cs, const MwuOptions& opts) {
    check_eps(opts.eps);
    if (cs.num_edges() != g.num_edges()) throw InvalidInput("constraint system does not match graph");
    if (!g.connected()) throw InvalidInput("graph is disconnected");
    auto t0 = Clock::now();
    int m = g.num_edges(), n = g.num_vertices();
    for (const Edge& e : g.edges())
        if (e.cost < 0) throw InvalidInput("costs must be non-negative");

    MincostResult out;
    int calls = 0;
    std::int64_t iters = 0;
    auto probe = [&](double cap, double budget, bool with_cost_row) -> MwuResult {
        std::vector<char> active(m, 0);
        for (const Edge& e : g.edges()) active[e.id] = e.cost <= cap;
        std::vector<ConstraintRow> rows = cs.rows();
        if (with_cost_row) {
            ConstraintRow r;
            r.bound = 1.0;
            for (const Edge& e : g.edges())
                if (active[e.id] && e.cost > 0) r.entries.push_back({e.id, e.cost / budget});
            rows.push_back(std::move(r));
        }
        MwuOptions o = opts;
        o.seed = derive_seed(opts.seed, 0x6d696e63ULL, static_cast<std::uint64_t>(calls));
        ++calls;
        MwuResult r = solve_packing(g, rows, active, o);
        iters += r.report.iterations;
        return r;
    };

    std::vector<double> costs;
    for (const Edge& e : g.edges()) costs.push_back(e.cost);
    std::sort(costs.begin(), costs.end());
    costs.erase(std::unique(costs.begin(), costs.end()), costs.end());

    auto finish = [&](MwuResult& r, double bound, double prefix) {
        out.status = SolveStatus::Feasible;
        out.decomposition = std::move(r.decomposition);
        out.marginals = std::move(r.marginals);
        out.report.cost_bound = bound;
        out.report.prefix_cost = prefix;
        double c = 0;
        for (const Edge& e : g.edges()) c += e.cost * out.marginals[e.id];
        out.report.lp_cost = c;
        out.report.max_violation = cs.max_relative_load(out.marginals);
    };

    if (costs.empty()) {
        if (n <= 1) {
            MwuResult r = probe(0, 1, false);
            finish(r, 0, 0);
        }
    } else {
        // Smallest cost threshold whose prefix admits a feasible solution.
        int lo = 0, hi = static_cast<int>(costs.size()) - 1;
        std::optional<MwuResult> best;
        int best_idx = -1;
        {
            MwuResult r = probe(costs[hi], 1, false);
            if (r.feasible()) {
                best = std::move(r);
                best_idx = hi;
            }
        }
        if (best) {
            while (lo < hi) {
                int mid = lo + (hi - lo) / 2;
                std::vector<char> active(m, 0);
                for (const Edge& e : g.edges()) active[e.id] = e.cost <= costs[mid];
                bool conn = active_connected(g, active);
                MwuResult r;
                if (conn) r = probe(costs[mid], 1, false);
                if (conn && r.feasible()) {
                    hi = mid;
                    best = std::move(r);
                    best_idx = mid;
                } else {
                    lo = mid + 1;
                }
            }
            double ci = costs[best_idx];
            if (ci == 0) {
                finish(*best, 0, 0);
            } else {
                double L = ci, U = (n - 1) * ci;
                while (U > (1 + opts.eps) * L) {
                    double B = std::sqrt(L * U);
                    std::vector<char> active(m, 0);
                    for (const Edge& e : g.edges()) active[e.id] = e.cost <= B;
                    MwuResult r;
                    bool ok = active_connected(g, active);
                    if (ok) {
                        r = probe(B, B, true);
                        ok = r.feasible();
                    }
                    if (ok) {
                        U = B;
                        best = std::move(r);
                    } else {
                        L = B;
                    }
                }
                finish(*best, U, ci);
            }
        }
    }
    out.report.solver_calls = calls;
    out.report.iterations = iters;
    out.report.wall_ms = ms_since(t0);
    return out;
}

}  // namespace treepack
