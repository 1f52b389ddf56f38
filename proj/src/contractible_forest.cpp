#include "treepack/contractible_forest.hpp"

#include <algorithm>
#include <string>

namespace treepack {

ContractibleForest::ContractibleForest(std::span<const VertexId> vertices, std::span<const EdgeRef> edges) {
    for (VertexId v : vertices) {
        if (!adj_.emplace(v, std::map<VertexId, EdgeId>{}).second)
            throw InvalidInput("duplicate vertex " + std::to_string(v));
        index_.emplace(v, static_cast<int>(label_.size()));
        label_.push_back(v);
    }
    rep_.reset(static_cast<int>(label_.size()));
    DisjointSet cycle(static_cast<int>(label_.size()));
    for (const EdgeRef& e : edges) {
        auto ia = index_.find(e.a), ib = index_.find(e.b);
        if (ia == index_.end() || ib == index_.end())
            throw InvalidInput("edge " + std::to_string(e.id) + " has an unknown endpoint");
        if (e.a == e.b) throw InvalidInput("self-loop on edge " + std::to_string(e.id));
        if (!ends_.emplace(e.id, e).second) throw InvalidInput("duplicate edge id " + std::to_string(e.id));
        if (!cycle.unite(ia->second, ib->second))
            throw InvalidInput("edge " + std::to_string(e.id) + " closes a cycle");
        adj_[e.a][e.b] = e.id;
        adj_[e.b][e.a] = e.id;
    }
}

int ContractibleForest::index_of(VertexId label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InvalidInput("unknown vertex " + std::to_string(label));
    return it->second;
}

void ContractibleForest::contract(VertexId u, VertexId v, VertexId z) {
    if (z != u && z != v) throw InvalidInput("contract: removed vertex must be an endpoint");
    VertexId s = z == u ? v : u;
    auto iz = adj_.find(z);
    if (iz == adj_.end() || !adj_.count(s)) throw InvalidInput("contract: vertex not present");
    auto zs = iz->second.find(s);
    if (zs == iz->second.end()) throw InvalidInput("contract: no edge between the endpoints");
    EdgeId uv = zs->second;

    auto& as = adj_[s];
    as.erase(z);
    ends_.erase(uv);
    for (auto [w, f] : iz->second) {
        if (w == s) continue;
        auto& aw = adj_[w];
        aw.erase(z);
        ++moves_;
        auto clash = as.find(w);
        if (clash != as.end()) {
            // s and w were already adjacent: keep the smaller id.
            if (clash->second < f) {
                ends_.erase(f);
                dropped_.push_back(f);
                continue;
            }
            ends_.erase(clash->second);
            dropped_.push_back(clash->second);
        }
        aw[s] = f;
        as[w] = f;
        EdgeRef& ref = ends_[f];
        if (ref.a == z) ref.a = s; else ref.b = s;
    }
    adj_.erase(iz);

    int iz_idx = index_of(z), is_idx = index_of(s);
    rep_.unite(iz_idx, is_idx);
    rep_.change_rep(iz_idx, is_idx);
}

VertexId ContractibleForest::represented(VertexId u) { return label_[rep_.find_set(index_of(u))]; }

std::pair<VertexId, VertexId> ContractibleForest::represented_edge(VertexId u, VertexId v) {
    return {represented(u), represented(v)};
}

EdgeId ContractibleForest::orig_edge(VertexId u, VertexId v) const {
    auto it = adj_.find(u);
    if (it != adj_.end()) {
        auto jt = it->second.find(v);
        if (jt != it->second.end()) return jt->second;
    }
    throw InvalidInput("no edge between " + std::to_string(u) + " and " + std::to_string(v));
}

ContractibleForest ContractibleForest::copy() const {
    auto vs = vertices();
    auto es = edges();
    return ContractibleForest(vs, es);
}

int ContractibleForest::degree(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw InvalidInput("unknown vertex " + std::to_string(v));
    return static_cast<int>(it->second.size());
}

std::vector<VertexId> ContractibleForest::vertices() const {
    std::vector<VertexId> vs;
    vs.reserve(adj_.size());
    for (const auto& [v, _] : adj_) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    return vs;
}

std::vector<EdgeRef> ContractibleForest::edges() const {
    std::vector<EdgeRef> es;
    es.reserve(ends_.size());
    for (const auto& [_, e] : ends_) es.push_back(e);
    std::sort(es.begin(), es.end(), [](const EdgeRef& x, const EdgeRef& y) { return x.id < y.id; });
    return es;
}

const std::map<VertexId, EdgeId>& ContractibleForest::neighbors(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw InvalidInput("unknown vertex " + std::to_string(v));
    return it->second;
}

}  // namespace treepack
