#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "treepack/graph.hpp"

namespace treepack {

struct Instance {
    Graph graph;
    ConstraintSystem constraints;
};

// Text format, one record per line, '#' starts a comment:
//   p st <n> <m> <k>
//   e <edge_id> <u> <v> <cost>
//   r <row> <b>
//   a <row> <edge_id> <coeff>
//   deg <v> <B>          row over all edges at v with coefficient 1
// Rows given by `deg` take the row indices not used by `r` lines, in file order.
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);
void write_instance(std::ostream& out, const Instance& inst);
std::string instance_to_string(const Instance& inst);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

// Dispatches on extension: ".json" uses the JSON form, anything else the text form.
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

}  // namespace treepack
