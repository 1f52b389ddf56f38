#include "treepack/decomposition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "treepack/disjoint_set.hpp"

namespace treepack {

std::size_t ImplicitDecomposition::encoding_size() const {
    std::size_t s = 0;
    for (const auto& d : diffs) s += d.removed.size() + d.added.size();
    return s;
}

double ImplicitDecomposition::delta_sum() const { return std::accumulate(deltas.begin(), deltas.end(), 0.0); }

void ImplicitDecomposition::validate(const Graph& g) const {
    if (deltas.empty()) throw InvalidInput("decomposition has no trees");
    if (diffs.size() + 1 != deltas.size()) throw InvalidInput("decomposition needs h-1 diffs for h trees");
    if (n != g.num_vertices()) throw InvalidInput("decomposition vertex count does not match graph");
    for (std::size_t i = 0; i < deltas.size(); ++i)
        if (!(deltas[i] > 0.0) || !std::isfinite(deltas[i]))
            throw InvalidInput("step " + std::to_string(i) + ": coefficient must be positive");
    for (EdgeId e : base)
        if (e < 0 || e >= g.num_edges()) throw InvalidInput("step 0: unknown edge " + std::to_string(e));
    if (!is_spanning_tree(g, base)) throw InvalidInput("step 0: base is not a spanning tree");
    std::vector<char> in(g.num_edges(), 0);
    for (EdgeId e : base) in[e] = 1;
    std::vector<EdgeId> cur(base);
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        const auto& d = diffs[i];
        std::string step = "step " + std::to_string(i + 1) + ": ";
        if (d.removed.size() != d.added.size()) throw InvalidInput(step + "diff sizes differ");
        for (EdgeId e : d.removed) {
            if (e < 0 || e >= g.num_edges() || !in[e]) throw InvalidInput(step + "removes an edge not in the tree");
            in[e] = 0;
        }
        for (EdgeId e : d.added) {
            if (e < 0 || e >= g.num_edges() || in[e]) throw InvalidInput(step + "adds an edge already in the tree");
            if (std::find(d.removed.begin(), d.removed.end(), e) != d.removed.end())
                throw InvalidInput(step + "removed and added sets overlap");
            in[e] = 1;
        }
        cur.clear();
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (in[e]) cur.push_back(e);
        if (!is_spanning_tree(g, cur)) throw InvalidInput(step + "replay is not a spanning tree");
    }
}

std::vector<std::vector<EdgeId>> ImplicitDecomposition::expand() const {
    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> cur(base);
    std::sort(cur.begin(), cur.end());
    out.push_back(cur);
    for (const auto& d : diffs) {
        for (EdgeId e : d.removed) std::erase(cur, e);
        cur.insert(cur.end(), d.added.begin(), d.added.end());
        std::sort(cur.begin(), cur.end());
        out.push_back(cur);
    }
    return out;
}

std::vector<double> ImplicitDecomposition::marginal_values(int num_edges) const {
    if (diffs.size() + 1 != deltas.size()) throw InvalidInput("decomposition needs h-1 diffs for h trees");
    // prefix[i] = sum of deltas of trees 0..i-1
    std::vector<double> prefix(deltas.size() + 1, 0.0);
    for (std::size_t i = 0; i < deltas.size(); ++i) prefix[i + 1] = prefix[i] + deltas[i];
    std::vector<int> entered(num_edges, -1);
    std::vector<double> z(num_edges, 0.0);
    for (EdgeId e : base) {
        if (e < 0 || e >= num_edges || entered[e] >= 0) throw InvalidInput("step 0: bad base edge");
        entered[e] = 0;
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        int next = static_cast<int>(i) + 1;  // index of the tree produced by this diff
        for (EdgeId e : diffs[i].removed) {
            if (e < 0 || e >= num_edges || entered[e] < 0)
                throw InvalidInput("step " + std::to_string(next) + ": removes an edge not in the tree");
            z[e] += prefix[next] - prefix[entered[e]];
            entered[e] = -1;
        }
        for (EdgeId e : diffs[i].added) {
            if (e < 0 || e >= num_edges || entered[e] >= 0)
                throw InvalidInput("step " + std::to_string(next) + ": adds an edge already in the tree");
            entered[e] = next;
        }
    }
    for (EdgeId e = 0; e < num_edges; ++e)
        if (entered[e] >= 0) z[e] += prefix.back() - prefix[entered[e]];
    return z;
}

FractionalEdgeVector ImplicitDecomposition::marginals(int num_edges) const {
    auto z = marginal_values(num_edges);
    for (double& v : z) v = std::clamp(v, 0.0, 1.0);
    return FractionalEdgeVector(std::move(z));
}

void write_decomposition(std::ostream& out, const ImplicitDecomposition& d) {
    auto ids = [&](const std::vector<EdgeId>& v) {
        std::vector<EdgeId> s(v);
        std::sort(s.begin(), s.end());
        for (EdgeId e : s) out << ' ' << e;
    };
    out << "d " << d.n << ' ' << d.deltas.size() << '\n';
    out << 'b';
    ids(d.base);
    out << '\n';
    out << std::setprecision(17);
    for (std::size_t i = 0; i < d.deltas.size(); ++i) {
        out << "s " << d.deltas[i] << " |";
        if (i > 0) ids(d.diffs[i - 1].removed);
        out << " |";
        if (i > 0) ids(d.diffs[i - 1].added);
        out << '\n';
    }
}

std::string decomposition_to_string(const ImplicitDecomposition& d) {
    std::ostringstream os;
    write_decomposition(os, d);
    return os.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

long long to_int(const std::string& tok, int line) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    return v;
}

std::vector<EdgeId> to_ids(const std::string& s, int line) {
    std::vector<EdgeId> out;
    for (const auto& t : split_ws(s)) out.push_back(static_cast<EdgeId>(to_int(t, line)));
    return out;
}

}  // namespace

ImplicitDecomposition parse_decomposition(std::istream& in) {
    ImplicitDecomposition d;
    std::string raw;
    int line = 0;
    long long h = -1;
    bool have_base = false;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tok = split_ws(raw);
        if (tok.empty()) continue;
        if (tok[0] == "d") {
            if (tok.size() != 3 || h >= 0) throw ParseError(line, "bad header");
            d.n = static_cast<int>(to_int(tok[1], line));
            h = to_int(tok[2], line);
            if (h < 1 || d.n < 0) throw ParseError(line, "bad header sizes");
        } else if (tok[0] == "b") {
            if (h < 0 || have_base) throw ParseError(line, "unexpected base line");
            d.base = to_ids(raw.substr(raw.find('b') + 1), line);
            std::sort(d.base.begin(), d.base.end());
            have_base = true;
        } else if (tok[0] == "s") {
            if (!have_base) throw ParseError(line, "step before base line");
            std::string rest = raw.substr(raw.find('s') + 1);
            auto p1 = rest.find('|');
            auto p2 = p1 == std::string::npos ? p1 : rest.find('|', p1 + 1);
            if (p2 == std::string::npos) throw ParseError(line, "step needs two '|' separators");
            auto dt = split_ws(rest.substr(0, p1));
            if (dt.size() != 1) throw ParseError(line, "step needs one coefficient");
            double delta = 0;
            try {
                std::size_t used = 0;
                delta = std::stod(dt[0], &used);
                if (used != dt[0].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError(line, "bad coefficient '" + dt[0] + "'");
            }
            TreeDiff diff{to_ids(rest.substr(p1 + 1, p2 - p1 - 1), line), to_ids(rest.substr(p2 + 1), line)};
            if (d.deltas.empty()) {
                if (!diff.removed.empty() || !diff.added.empty()) throw ParseError(line, "first step must have empty diffs");
            } else {
                d.diffs.push_back(std::move(diff));
            }
            d.deltas.push_back(delta);
        } else {
            throw ParseError(line, "unknown record '" + tok[0] + "'");
        }
    }
    if (h < 0) throw ParseError(line, "missing header");
    if (static_cast<long long>(d.deltas.size()) != h) throw ParseError(line, "step count does not match header");
    return d;
}

ImplicitDecomposition parse_decomposition_string(const std::string& text) {
    std::istringstream is(text);
    return parse_decomposition(is);
}

}  // namespace treepack
