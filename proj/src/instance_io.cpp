#include "treepack/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

namespace treepack {

namespace {

long long parse_int(const std::string& tok, int line) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    return v;
}

double parse_double(const std::string& tok, int line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected number, got '" + tok + "'");
    }
    if (used != tok.size() || !std::isfinite(v)) throw ParseError(line, "expected number, got '" + tok + "'");
    return v;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

Instance parse_instance(std::istream& in) {
    std::string raw;
    int line = 0;
    bool have_header = false;
    long long n = 0, m = 0, k = 0;
    std::vector<Edge> edges;
    std::vector<char> edge_seen;
    struct PendingRow {
        bool declared = false;
        double bound = 0;
        std::map<EdgeId, double> entries;
        int line = 0;
    };
    std::vector<PendingRow> rows;
    std::vector<std::pair<VertexId, double>> deg_rows;
    std::vector<int> deg_lines;

    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string& kind = tok[0];
        auto need = [&](std::size_t count) {
            if (tok.size() != count)
                throw ParseError(line, "'" + kind + "' expects " + std::to_string(count - 1) + " fields");
        };
        if (kind == "p") {
            need(5);
            if (have_header) throw ParseError(line, "duplicate header");
            if (tok[1] != "st") throw ParseError(line, "unknown problem type '" + tok[1] + "'");
            n = parse_int(tok[2], line);
            m = parse_int(tok[3], line);
            k = parse_int(tok[4], line);
            if (n < 0 || m < 0 || k < 0) throw ParseError(line, "negative size in header");
            edges.resize(m);
            edge_seen.assign(m, 0);
            rows.resize(k);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(line, "record before 'p st' header");
        if (kind == "e") {
            need(5);
            long long id = parse_int(tok[1], line);
            long long u = parse_int(tok[2], line), v = parse_int(tok[3], line);
            double c = parse_double(tok[4], line);
            if (id < 0 || id >= m) throw ParseError(line, "edge id out of range");
            if (edge_seen[id]) throw ParseError(line, "duplicate edge id " + std::to_string(id));
            if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line, "edge endpoint out of range");
            if (u == v) throw ParseError(line, "self-loop");
            if (c < 0) throw ParseError(line, "negative cost");
            edge_seen[id] = 1;
            edges[id] = Edge{static_cast<EdgeId>(id), static_cast<VertexId>(u), static_cast<VertexId>(v), c};
        } else if (kind == "r") {
            need(3);
            long long r = parse_int(tok[1], line);
            if (r < 0 || r >= k) throw ParseError(line, "row index out of range");
            if (rows[r].declared) throw ParseError(line, "duplicate row " + std::to_string(r));
            double b = parse_double(tok[2], line);
            if (!(b >= 1.0)) throw ParseError(line, "row bound must be >= 1");
            rows[r].declared = true;
            rows[r].bound = b;
            rows[r].line = line;
        } else if (kind == "a") {
            need(4);
            long long r = parse_int(tok[1], line);
            long long e = parse_int(tok[2], line);
            double c = parse_double(tok[3], line);
            if (r < 0 || r >= k) throw ParseError(line, "row index out of range");
            if (e < 0 || e >= m) throw ParseError(line, "edge id out of range");
            if (!(c >= 0.0 && c <= 1.0)) throw ParseError(line, "coefficient out of range");
            if (!rows[r].entries.emplace(static_cast<EdgeId>(e), c).second)
                throw ParseError(line, "duplicate coefficient for edge " + std::to_string(e));
        } else if (kind == "deg") {
            need(3);
            long long v = parse_int(tok[1], line);
            double b = parse_double(tok[2], line);
            if (v < 0 || v >= n) throw ParseError(line, "vertex out of range");
            if (!(b >= 1.0)) throw ParseError(line, "row bound must be >= 1");
            deg_rows.emplace_back(static_cast<VertexId>(v), b);
            deg_lines.push_back(line);
        } else {
            throw ParseError(line, "unknown record '" + kind + "'");
        }
    }
    if (!have_header) throw ParseError(line, "missing 'p st' header");
    for (long long e = 0; e < m; ++e)
        if (!edge_seen[e]) throw ParseError(line, "edge " + std::to_string(e) + " not defined");

    Graph g(static_cast<int>(n), std::move(edges));

    std::size_t next_deg = 0;
    for (long long r = 0; r < k; ++r) {
        if (rows[r].declared) continue;
        if (!rows[r].entries.empty()) throw ParseError(line, "coefficients given for undeclared row " + std::to_string(r));
        if (next_deg == deg_rows.size()) throw ParseError(line, "row " + std::to_string(r) + " not defined");
        auto [v, b] = deg_rows[next_deg++];
        rows[r].declared = true;
        rows[r].bound = b;
        for (EdgeId e : g.incident(v)) rows[r].entries[e] = 1.0;
    }
    if (next_deg != deg_rows.size())
        throw ParseError(deg_lines[next_deg], "more rows than declared in header");

    std::vector<ConstraintRow> crs;
    crs.reserve(rows.size());
    for (auto& pr : rows) {
        ConstraintRow cr;
        cr.bound = pr.bound;
        for (auto [e, c] : pr.entries) cr.entries.push_back({e, c});
        crs.push_back(std::move(cr));
    }
    return Instance{std::move(g), ConstraintSystem(static_cast<int>(m), std::move(crs))};
}

Instance parse_instance_string(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    const Graph& g = inst.graph;
    const ConstraintSystem& cs = inst.constraints;
    out << "p st " << g.num_vertices() << ' ' << g.num_edges() << ' ' << cs.num_rows() << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.id << ' ' << e.u << ' ' << e.v << ' ' << fmt_double(e.cost) << '\n';
    for (int i = 0; i < cs.num_rows(); ++i) {
        out << "r " << i << ' ' << fmt_double(cs.row(i).bound) << '\n';
        for (const auto& en : cs.row(i).entries) out << "a " << i << ' ' << en.edge << ' ' << fmt_double(en.coeff) << '\n';
    }
}

std::string instance_to_string(const Instance& inst) {
    std::ostringstream os;
    write_instance(os, inst);
    return os.str();
}

nlohmann::json instance_to_json(const Instance& inst) {
    using nlohmann::json;
    json j;
    j["schema"] = 1;
    j["n"] = inst.graph.num_vertices();
    json edges = json::array();
    for (const Edge& e : inst.graph.edges()) edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"cost", e.cost}});
    j["edges"] = std::move(edges);
    json rows = json::array();
    for (const auto& r : inst.constraints.rows()) {
        json entries = json::array();
        for (const auto& en : r.entries) entries.push_back({en.edge, en.coeff});
        rows.push_back({{"b", r.bound}, {"entries", std::move(entries)}});
    }
    j["rows"] = std::move(rows);
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    try {
        int n = j.at("n").get<int>();
        const auto& je = j.at("edges");
        std::vector<Edge> edges(je.size());
        std::vector<char> seen(je.size(), 0);
        for (const auto& e : je) {
            long long id = e.at("id").get<long long>();
            if (id < 0 || id >= static_cast<long long>(je.size())) throw InvalidInput("edge id out of range");
            if (seen[id]) throw InvalidInput("duplicate edge id " + std::to_string(id));
            seen[id] = 1;
            edges[id] = Edge{static_cast<EdgeId>(id), e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                             e.value("cost", 0.0)};
        }
        Graph g(n, std::move(edges));
        std::vector<ConstraintRow> rows;
        if (j.contains("rows")) {
            for (const auto& r : j.at("rows")) {
                ConstraintRow cr;
                cr.bound = r.at("b").get<double>();
                for (const auto& en : r.at("entries")) cr.entries.push_back({en.at(0).get<EdgeId>(), en.at(1).get<double>()});
                rows.push_back(std::move(cr));
            }
        }
        int m = g.num_edges();
        return Instance{std::move(g), ConstraintSystem(m, std::move(rows))};
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(std::string("malformed instance JSON: ") + ex.what());
    }
}

namespace {
bool is_json_path(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}
}  // namespace

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    if (is_json_path(path)) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& ex) {
            throw InvalidInput(std::string("malformed instance JSON: ") + ex.what());
        }
        return instance_from_json(j);
    }
    return parse_instance(in);
}

void save_instance(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    if (is_json_path(path))
        out << instance_to_json(inst).dump(2) << '\n';
    else
        write_instance(out, inst);
}

}  // namespace treepack
