#include "homdens/graph.hpp"

#include <stdexcept>

namespace homdens {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    rows_.assign(static_cast<size_t>(n) * words_, 0);
    degrees_.assign(n, 0);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (auto [u, v] : edges) {
        check_pair(u, v);
        if (!adjacent(u, v)) add_edge(u, v);
    }
}

void Graph::check_pair(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range: (" +
                                    std::to_string(u) + "," +
                                    std::to_string(v) + ")");
    if (u == v)
        throw std::invalid_argument("self-loop rejected: (" +
                                    std::to_string(u) + "," +
                                    std::to_string(v) + ")");
}

void Graph::add_edge(int u, int v) {
    check_pair(u, v);
    if (adjacent(u, v)) return;
    rows_[static_cast<size_t>(u) * words_ + (v >> 6)] |= uint64_t{1} << (v & 63);
    rows_[static_cast<size_t>(v) * words_ + (u >> 6)] |= uint64_t{1} << (u & 63);
    ++degrees_[u];
    ++degrees_[v];
    ++edge_count_;
}

void Graph::toggle_edge(int u, int v) {
    check_pair(u, v);
    bool present = adjacent(u, v);
    rows_[static_cast<size_t>(u) * words_ + (v >> 6)] ^= uint64_t{1} << (v & 63);
    rows_[static_cast<size_t>(v) * words_ + (u >> 6)] ^= uint64_t{1} << (u & 63);
    int delta = present ? -1 : 1;
    degrees_[u] += delta;
    degrees_[v] += delta;
    edge_count_ += delta;
}

Graph Graph::complement() const {
    Graph out(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!adjacent(u, v)) out.add_edge(u, v);
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<size_t>(edge_count_));
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

std::string Graph::canonical_key() const {
    std::string key(reinterpret_cast<const char*>(rows_.data()),
                    rows_.size() * sizeof(uint64_t));
    return std::to_string(n_) + ":" + key;
}

Bitset common_neighborhood(const Graph& g, std::span<const int> seq) {
    Bitset acc = Bitset::all(g.size());
    for (int v : seq) {
        if (v < 0 || v >= g.size())
            throw std::invalid_argument("sequence entry out of range: " +
                                        std::to_string(v));
        acc &= g.row(v);
    }
    return acc;
}

int common_neighborhood_count(const Graph& g, std::span<const int> seq) {
    return common_neighborhood(g, seq).count();
}

Graph tensor_product(const Graph& g1, const Graph& g2, long long vertex_budget) {
    if (g1.size() == 0 || g2.size() == 0)
        throw std::invalid_argument("tensor product of an empty graph");
    long long nv = static_cast<long long>(g1.size()) * g2.size();
    if (nv > vertex_budget)
        throw std::invalid_argument(
            "tensor product would have " + std::to_string(nv) +
            " vertices, over the vertex budget of " +
            std::to_string(vertex_budget));
    Graph out(static_cast<int>(nv));
    auto edges1 = g1.edges();
    auto edges2 = g2.edges();
    for (auto [u1, v1] : edges1) {
        for (auto [u2, v2] : edges2) {
            out.add_edge(u1 * g2.size() + u2, v1 * g2.size() + v2);
            out.add_edge(u1 * g2.size() + v2, v1 * g2.size() + u2);
        }
    }
    return out;
}

Graph tensor_power(const Graph& g, int s, long long vertex_budget) {
    if (s < 1) throw std::invalid_argument("tensor power requires s >= 1");
    Graph out = g;
    for (int i = 1; i < s; ++i) out = tensor_product(out, g, vertex_budget);
    return out;
}

}  // namespace homdens
