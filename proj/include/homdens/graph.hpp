#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "homdens/bitset.hpp"

namespace homdens {

using Edge = std::pair<int, int>;

// Sequences of vertices may repeat entries.
using VertexSequence = std::vector<int>;

// Simple undirected graph, adjacency stored as fixed-width bit rows.
// Values are treated as immutable once built; the few mutators exist for
// builders (generators, coloring scans) that own their copy.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, std::span<const Edge> edges);

    int size() const { return n_; }
    long long edge_count() const { return edge_count_; }
    size_t word_count() const { return words_; }

    bool adjacent(int u, int v) const {
        return (rows_[static_cast<size_t>(u) * words_ + (v >> 6)] >>
                (v & 63)) & 1u;
    }
    std::span<const uint64_t> row(int v) const {
        return {rows_.data() + static_cast<size_t>(v) * words_, words_};
    }
    int degree(int v) const { return degrees_[v]; }

    void add_edge(int u, int v);
    void toggle_edge(int u, int v);

    // Adjacency complement within K_n (no loops).
    Graph complement() const;

    std::vector<Edge> edges() const;

    std::string canonical_key() const;  // adjacency words, for hashing/ties

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_pair(int u, int v) const;

    int n_ = 0;
    size_t words_ = 0;
    std::vector<uint64_t> rows_;
    std::vector<int> degrees_;
    long long edge_count_ = 0;
};

// Common neighborhood N(S): vertices adjacent to every entry of the
// sequence. The empty sequence returns all of V(G).
Bitset common_neighborhood(const Graph& g, std::span<const int> seq);
int common_neighborhood_count(const Graph& g, std::span<const int> seq);

// Tensor (categorical) product: (u1,u2) ~ (v1,v2) iff u1~v1 and u2~v2.
// Vertex (u,v) of the product has index u * |G2| + v.
Graph tensor_product(const Graph& g1, const Graph& g2,
                     long long vertex_budget = 100000);

Graph tensor_power(const Graph& g, int s, long long vertex_budget = 100000);

}  // namespace homdens
