#include "treepack/dynamic_mst.hpp"

#include <algorithm>
#include <cmath>

#include "treepack/mst.hpp"

namespace treepack {

DynamicMst::DynamicMst(const Graph& g, std::vector<double> lengths, std::vector<char> active)
    : g_(&g), len_(std::move(lengths)), active_(std::move(active)) {
    int m = g.num_edges();
    if (static_cast<int>(len_.size()) != m) throw InvalidInput("need one length per edge");
    if (active_.empty()) active_.assign(m, 1);
    in_tree_.assign(m, 0);
    adj_.resize(g.num_vertices());
    mark_.assign(g.num_vertices(), 0);
    for (EdgeId e = 0; e < m; ++e)
        if (active_[e]) active_list_.push_back(e);
    SpanningTree t = mst(g, len_, active_);
    for (EdgeId e : t.edges()) link(e);
}

void DynamicMst::link(EdgeId e) {
    const Edge& ed = g_->edge(e);
    adj_[ed.u].emplace_back(ed.v, e);
    adj_[ed.v].emplace_back(ed.u, e);
    in_tree_[e] = 1;
}

void DynamicMst::unlink(EdgeId e) {
    const Edge& ed = g_->edge(e);
    for (VertexId w : {ed.u, ed.v}) {
        auto& a = adj_[w];
        auto it = std::find_if(a.begin(), a.end(), [&](const auto& p) { return p.second == e; });
        *it = a.back();
        a.pop_back();
    }
    in_tree_[e] = 0;
}

TreeDelta DynamicMst::increase(EdgeId e, double new_length) {
    if (!(new_length >= len_[e])) throw InvalidInput("dynamic MST supports only length increases");
    len_[e] = new_length;
    if (!in_tree_[e]) return {};
    unlink(e);
    // Label the side of u in T - e.
    if (++stamp_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        stamp_ = 1;
    }
    const Edge& ed = g_->edge(e);
    stack_.assign(1, ed.u);
    mark_[ed.u] = stamp_;
    while (!stack_.empty()) {
        VertexId x = stack_.back();
        stack_.pop_back();
        for (auto [y, _] : adj_[x])
            if (mark_[y] != stamp_) {
                mark_[y] = stamp_;
                stack_.push_back(y);
            }
    }
    EdgeId best = e;
    for (EdgeId f : active_list_) {
        if (in_tree_[f] || f == e) continue;
        const Edge& fd = g_->edge(f);
        if ((mark_[fd.u] == stamp_) != (mark_[fd.v] == stamp_) && less(f, best)) best = f;
    }
    link(best);
    if (best == e) return {};
    ++swaps_;
    return TreeDelta{e, best};
}

void DynamicMst::rescale(double factor) {
    for (double& l : len_) l *= factor;
}

std::vector<EdgeId> DynamicMst::tree_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < static_cast<EdgeId>(in_tree_.size()); ++e)
        if (in_tree_[e]) out.push_back(e);
    return out;
}

void GammaIndex::set(int row, double value) {
    if (std::abs(value) < 1e-12) value = 0.0;
    order_.erase({value_[row], row});
    value_[row] = value;
    order_.emplace(value, row);
}

void GammaIndex::at_least(double threshold, std::vector<int>& out) const {
    out.clear();
    for (auto it = order_.lower_bound({threshold, -1}); it != order_.end(); ++it)
        if (it->first > 0.0) out.push_back(it->second);
}

}  // namespace treepack
