#pragma once

#include <cstdint>
#include <string>

#include "treepack/instance_io.hpp"

namespace treepack {

struct GeneratorParams {
    int n = 8;
    int m = 0;              // random_gnm / laminar_cuts: total edge count (>= n-1)
    double bound = 0;       // uniform degree bound; 0 means "no degree rows"
    double center_bound = 0;  // star: bound at the center (0 = same as bound)
    int cuts = 0;           // laminar_cuts: number of nested cut rows
    double cut_bound = 2;   // laminar_cuts: bound of every cut row
    int max_cost = 0;       // integer costs drawn from [1, max_cost]; 0 gives all-zero costs
    bool simple = true;     // random_gnm: avoid parallel edges while possible
};

// kind is one of: random_gnm, complete, star, cycle, laminar_cuts.
Instance generate_instance(const std::string& kind, const GeneratorParams& params, std::uint64_t seed);

// Connected random graph with n vertices and m edges: a random tree plus extra edges.
Graph random_connected_graph(int n, int m, Rng& rng, bool simple = true, int max_cost = 0);

Graph complete_graph(int n);
Graph star_graph(int n);   // center 0
Graph cycle_graph(int n);
Graph petersen_graph();

}  // namespace treepack
