#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homdens/graph.hpp"

namespace homdens {

// Raised when a bipartition is requested for a non-bipartite graph; carries
// an odd cycle as the witness.
class OddCycleError : public std::invalid_argument {
public:
    OddCycleError(std::string msg, std::vector<int> cycle)
        : std::invalid_argument(std::move(msg)), odd_cycle(std::move(cycle)) {}
    std::vector<int> odd_cycle;
};

// Small bipartite pattern with fixed parts. Vertices are global ids
// 0..n-1; side_of(v) is 0 or 1. Edges are stored with the side-0 endpoint
// first.
class PatternGraph {
public:
    PatternGraph() = default;

    // If declared_sides is empty, a proper 2-coloring is computed per
    // connected component (lowest vertex of each component goes to side 0).
    static PatternGraph build(int n, std::span<const Edge> edges,
                              std::span<const int> declared_sides = {});

    int size() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int side_of(int v) const { return side_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(int u, int v) const;

    std::vector<int> part(int side) const;
    int part_size(int side) const;

    Graph to_graph() const;

    // Disjoint union, second operand's vertices shifted by size().
    PatternGraph disjoint_union(const PatternGraph& other) const;

    // Connected components as lists of vertices.
    std::vector<std::vector<int>> components() const;

private:
    int n_ = 0;
    std::vector<int> side_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Minimum degree of the bipartite complement, summed over connected
// components; isolated vertices contribute 0.
int width(const PatternGraph& h);

struct CompleteSideParams {
    int side;  // which part of H plays the role of the first part
    int r;     // vertices on that side complete to the other side
    int d;     // minimum degree on that side
};

// Best (side, r, d) with r >= 1 and d >= 1, preferring larger r*d and then
// smaller r (cheaper sequence space for the same bound). none if neither
// side qualifies.
std::optional<CompleteSideParams> complete_side_params(const PatternGraph& h);

struct StripResult {
    PatternGraph core;
    int removed_leaves = 0;
    std::vector<int> kept;  // original ids of the core vertices, ascending
};

// One-pass removal of degree-1 vertices; not iterated.
StripResult strip_leaves(const PatternGraph& h);

// Named families: K2, P<k> (path with k edges), C<k> (cycle with k edges),
// K<a>,<b>, S<k> (star with k leaves), Q<d> (d-cube). "A+B" builds a
// disjoint union. Complete K<n> parses for hosts but is rejected here for
// odd n >= 3 (not bipartite).
PatternGraph pattern_from_name(const std::string& name);

// Host version of the same shorthands; K<n> is the complete graph.
Graph graph_from_name(const std::string& name);

bool is_pattern_name(const std::string& name);

}  // namespace homdens
