#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

struct TreeDelta {
    EdgeId removed = -1;
    EdgeId added = -1;
    bool empty() const { return removed < 0; }
};

// Minimum spanning tree under (length, edge id) maintained under length
// increases. A tree edge that grows is swapped for the lightest edge crossing
// the cut it leaves behind, found by a linear scan.
class DynamicMst {
public:
    DynamicMst(const Graph& g, std::vector<double> lengths, std::vector<char> active = {});

    // new_length must be >= the current length of e.
    TreeDelta increase(EdgeId e, double new_length);
    // Multiplies every length by factor > 0; the tree is unchanged.
    void rescale(double factor);

    bool in_tree(EdgeId e) const { return in_tree_[e] != 0; }
    double length(EdgeId e) const { return len_[e]; }
    std::vector<EdgeId> tree_edges() const;  // sorted
    std::uint64_t swaps() const { return swaps_; }

private:
    bool less(EdgeId a, EdgeId b) const { return len_[a] < len_[b] || (len_[a] == len_[b] && a < b); }
    void unlink(EdgeId e);
    void link(EdgeId e);

    const Graph* g_;
    std::vector<double> len_;
    std::vector<char> active_;
    std::vector<char> in_tree_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
    std::vector<EdgeId> active_list_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<VertexId> stack_;
    std::uint64_t swaps_ = 0;
};

// Rows ordered by gamma_i = (A 1_T)_i / b_i.
class GammaIndex {
public:
    explicit GammaIndex(int rows = 0) : value_(rows, 0.0) {
        for (int i = 0; i < rows; ++i) order_.emplace(0.0, i);
    }
    void set(int row, double value);
    void add(int row, double delta) { set(row, value_[row] + delta); }
    double value(int row) const { return value_[row]; }
    double max() const { return order_.empty() ? 0.0 : order_.rbegin()->first; }
    // Rows with gamma_i >= threshold and gamma_i > 0, in increasing order of gamma.
    void at_least(double threshold, std::vector<int>& out) const;
    int size() const { return static_cast<int>(value_.size()); }

private:
    std::vector<double> value_;
    std::set<std::pair<double, int>> order_;
};

}  // namespace treepack
