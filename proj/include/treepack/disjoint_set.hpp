#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "treepack/types.hpp"

namespace treepack {

// Union-find over [0, n) with union by rank and path compression.
// Each set carries an explicit representative that change_rep can move to
// any member, independent of which node is the internal root.
class DisjointSet {
public:
    DisjointSet() = default;
    explicit DisjointSet(int n) { reset(n); }

    void reset(int n) {
        parent_.resize(n);
        std::iota(parent_.begin(), parent_.end(), 0);
        rank_.assign(n, 0);
        rep_.resize(n);
        std::iota(rep_.begin(), rep_.end(), 0);
    }

    int make_set() {
        int id = static_cast<int>(parent_.size());
        parent_.push_back(id);
        rank_.push_back(0);
        rep_.push_back(id);
        return id;
    }

    int size() const { return static_cast<int>(parent_.size()); }

    int find_set(int u) { return rep_[root(u)]; }
    bool same(int u, int v) { return root(u) == root(v); }

    // Merges the sets of u and v; the representative of the merged set is the
    // old representative of whichever root survives. Returns false if already joined.
    bool unite(int u, int v) {
        int ru = root(u), rv = root(v);
        if (ru == rv) return false;
        if (rank_[ru] < rank_[rv]) std::swap(ru, rv);
        parent_[rv] = ru;
        if (rank_[ru] == rank_[rv]) ++rank_[ru];
        return true;
    }

    // Makes v the representative of its set. u and v must be in the same set.
    void change_rep(int u, int v) {
        int r = root(u);
        if (r != root(v)) throw InternalError("change_rep on elements of different sets");
        rep_[r] = v;
    }

private:
    int root(int u) {
        int r = u;
        while (parent_[r] != r) r = parent_[r];
        while (parent_[u] != r) {
            int next = parent_[u];
            parent_[u] = r;
            u = next;
        }
        return r;
    }

    std::vector<int> parent_;
    std::vector<int> rank_;
    std::vector<int> rep_;
};

}  // namespace treepack
