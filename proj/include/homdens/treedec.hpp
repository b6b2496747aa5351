#pragma once

#include <vector>

#include "homdens/pattern.hpp"

namespace homdens {

struct EliminationOrder {
    std::vector<int> order;  // vertices in elimination sequence
    int width = 0;           // induced width = treewidth when optimal
    bool found = false;
};

// Exact minimum-width elimination order via subset DP over the fill graph;
// intended for patterns with at most ~12 vertices. Returns found=false when
// the optimum exceeds max_width.
EliminationOrder find_elimination_order(const std::vector<std::vector<int>>& adj,
                                        int max_width);
EliminationOrder find_elimination_order(const PatternGraph& h, int max_width);

// Degree of v in the fill graph after eliminating the given vertex set:
// vertices outside eliminated|{v} reachable from v through eliminated ones.
int fill_degree(const std::vector<std::vector<int>>& adj, unsigned eliminated,
                int v);

}  // namespace homdens
