#include "homdens/pattern.hpp"

#include <algorithm>
#include <queue>

namespace homdens {

namespace {

std::string cycle_to_string(const std::vector<int>& cycle) {
    std::string s;
    for (size_t i = 0; i < cycle.size(); ++i) {
        if (i) s += "-";
        s += std::to_string(cycle[i]);
    }
    return s;
}

}  // namespace

PatternGraph PatternGraph::build(int n, std::span<const Edge> edges,
                                 std::span<const int> declared_sides) {
    // Validation and dedup through Graph (range, loops, symmetry).
    Graph g(n, edges);

    PatternGraph h;
    h.n_ = n;
    h.adj_.assign(n, {});

    if (!declared_sides.empty()) {
        if (static_cast<int>(declared_sides.size()) != n)
            throw std::invalid_argument("declared partition must cover all vertices");
        h.side_.assign(declared_sides.begin(), declared_sides.end());
        for (int v = 0; v < n; ++v)
            if (h.side_[v] != 0 && h.side_[v] != 1)
                throw std::invalid_argument("partition sides must be 0 or 1");
    } else {
        // Proper 2-coloring per component; report an odd cycle on failure.
        h.side_.assign(n, -1);
        std::vector<int> parent(n, -1);
        for (int root = 0; root < n; ++root) {
            if (h.side_[root] != -1) continue;
            h.side_[root] = 0;
            std::queue<int> q;
            q.push(root);
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                for (int v = 0; v < n; ++v) {
                    if (!g.adjacent(u, v)) continue;
                    if (h.side_[v] == -1) {
                        h.side_[v] = 1 - h.side_[u];
                        parent[v] = u;
                        q.push(v);
                    } else if (h.side_[v] == h.side_[u]) {
                        // Walk both vertices to the root; the two paths plus
                        // the edge (u,v) close an odd cycle.
                        std::vector<int> pu, pv;
                        for (int x = u; x != -1; x = parent[x]) pu.push_back(x);
                        for (int x = v; x != -1; x = parent[x]) pv.push_back(x);
                        while (pu.size() > 1 && pv.size() > 1 &&
                               pu[pu.size() - 2] == pv[pv.size() - 2]) {
                            pu.pop_back();
                            pv.pop_back();
                        }
                        std::vector<int> cycle(pu.begin(), pu.end());
                        cycle.insert(cycle.end(), pv.rbegin() + 1, pv.rend());
                        throw OddCycleError(
                            "graph is not bipartite: odd cycle " +
                                cycle_to_string(cycle),
                            cycle);
                    }
                }
            }
        }
    }

    for (auto e : g.edges()) {
        auto [u, v] = e;
        if (h.side_[u] == h.side_[v])
            throw std::invalid_argument(
                "edge (" + std::to_string(u) + "," + std::to_string(v) +
                ") does not cross the declared partition");
        if (h.side_[u] == 1) std::swap(u, v);
        h.edges_.emplace_back(u, v);
        h.adj_[u].push_back(v);
        h.adj_[v].push_back(u);
    }
    for (auto& a : h.adj_) std::sort(a.begin(), a.end());
    return h;
}

bool PatternGraph::adjacent(int u, int v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<int> PatternGraph::part(int side) const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (side_[v] == side) out.push_back(v);
    return out;
}

int PatternGraph::part_size(int side) const {
    int c = 0;
    for (int v = 0; v < n_; ++v)
        if (side_[v] == side) ++c;
    return c;
}

Graph PatternGraph::to_graph() const {
    return Graph(n_, edges_);
}

PatternGraph PatternGraph::disjoint_union(const PatternGraph& other) const {
    PatternGraph out;
    out.n_ = n_ + other.n_;
    out.side_ = side_;
    out.side_.insert(out.side_.end(), other.side_.begin(), other.side_.end());
    out.edges_ = edges_;
    for (auto [u, v] : other.edges_)
        out.edges_.emplace_back(u + n_, v + n_);
    out.adj_ = adj_;
    out.adj_.resize(out.n_);
    for (int v = 0; v < other.n_; ++v) {
        out.adj_[n_ + v].reserve(other.adj_[v].size());
        for (int w : other.adj_[v]) out.adj_[n_ + v].push_back(w + n_);
    }
    return out;
}

std::vector<std::vector<int>> PatternGraph::components() const {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(n_, 0);
    for (int root = 0; root < n_; ++root) {
        if (seen[root]) continue;
        std::vector<int> comp, stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v : adj_[u])
                if (!seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

int width(const PatternGraph& h) {
    int total = 0;
    for (const auto& comp : h.components()) {
        if (comp.size() <= 1) continue;
        int side_count[2] = {0, 0};
        for (int v : comp) ++side_count[h.side_of(v)];
        int best = -1;
        for (int v : comp) {
            int other = side_count[1 - h.side_of(v)];
            int comp_deg = other - h.degree(v);
            if (best < 0 || comp_deg < best) best = comp_deg;
        }
        total += best;
    }
    return total;
}

std::optional<CompleteSideParams> complete_side_params(const PatternGraph& h) {
    if (h.edge_count() == 0) return std::nullopt;
    std::optional<CompleteSideParams> best;
    for (int side = 0; side < 2; ++side) {
        int other_size = h.part_size(1 - side);
        if (other_size == 0) continue;
        int r = 0, d = -1;
        bool side_empty = true;
        for (int v = 0; v < h.size(); ++v) {
            if (h.side_of(v) != side) continue;
            side_empty = false;
            int deg = h.degree(v);
            if (deg == other_size) ++r;
            if (d < 0 || deg < d) d = deg;
        }
        if (side_empty || r == 0 || d < 1) continue;
        CompleteSideParams cand{side, r, d};
        if (!best || cand.r * cand.d > best->r * best->d ||
            (cand.r * cand.d == best->r * best->d && cand.r < best->r))
            best = cand;
    }
    return best;
}

StripResult strip_leaves(const PatternGraph& h) {
    StripResult out;
    std::vector<int> remap(h.size(), -1);
    std::vector<int> kept_sides;
    for (int v = 0; v < h.size(); ++v) {
        if (h.degree(v) >= 2) {
            remap[v] = static_cast<int>(out.kept.size());
            out.kept.push_back(v);
            kept_sides.push_back(h.side_of(v));
        } else if (h.degree(v) == 1) {
            ++out.removed_leaves;
        }
    }
    std::vector<Edge> kept_edges;
    for (auto [u, v] : h.edges())
        if (remap[u] >= 0 && remap[v] >= 0)
            kept_edges.emplace_back(remap[u], remap[v]);
    out.core = PatternGraph::build(static_cast<int>(out.kept.size()),
                                   kept_edges, kept_sides);
    return out;
}

namespace {

struct ParsedName {
    char family;
    int a = -1, b = -1;
};

std::optional<ParsedName> parse_atom(const std::string& atom) {
    if (atom.empty()) return std::nullopt;
    char fam = atom[0];
    if (fam != 'K' && fam != 'P' && fam != 'C' && fam != 'S' && fam != 'Q')
        return std::nullopt;
    std::string rest;
    for (char c : atom.substr(1))
        if (c != '_' && c != '{' && c != '}') rest += c;
    if (rest.empty()) return std::nullopt;
    ParsedName p{fam};
    auto comma = rest.find(',');
    try {
        if (comma == std::string::npos) {
            size_t used = 0;
            p.a = std::stoi(rest, &used);
            if (used != rest.size()) return std::nullopt;
        } else {
            size_t used = 0;
            p.a = std::stoi(rest.substr(0, comma), &used);
            if (used != comma) return std::nullopt;
            std::string tail = rest.substr(comma + 1);
            p.b = std::stoi(tail, &used);
            if (used != tail.size()) return std::nullopt;
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (p.a < 0) return std::nullopt;
    return p;
}

std::vector<Edge> complete_bipartite_edges(int a, int b) {
    std::vector<Edge> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return edges;
}

// Atom -> (n, edges); bipartiteness is checked by PatternGraph::build.
std::pair<int, std::vector<Edge>> atom_edges(const ParsedName& p,
                                             const std::string& atom) {
    std::vector<Edge> edges;
    switch (p.family) {
        case 'P': {  // path with a edges
            for (int i = 0; i < p.a; ++i) edges.emplace_back(i, i + 1);
            return {p.a + 1, edges};
        }
        case 'C': {  // cycle with a edges
            if (p.a < 3)
                throw std::invalid_argument("cycle needs at least 3 edges: " + atom);
            for (int i = 0; i < p.a; ++i)
                edges.emplace_back(i, (i + 1) % p.a);
            return {p.a, edges};
        }
        case 'S':  // star with a leaves
            return {p.a + 1, complete_bipartite_edges(1, p.a)};
        case 'Q': {  // a-dimensional cube
            if (p.a > 20)
                throw std::invalid_argument("cube dimension too large: " + atom);
            int n = 1 << p.a;
            for (int u = 0; u < n; ++u)
                for (int bit = 0; bit < p.a; ++bit)
                    if (u < (u ^ (1 << bit))) edges.emplace_back(u, u ^ (1 << bit));
            return {n, edges};
        }
        case 'K': {
            if (p.b >= 0) return {p.a + p.b, complete_bipartite_edges(p.a, p.b)};
            // complete graph
            for (int u = 0; u < p.a; ++u)
                for (int v = u + 1; v < p.a; ++v) edges.emplace_back(u, v);
            return {p.a, edges};
        }
        default:
            throw std::invalid_argument("unknown family in: " + atom);
    }
}

}  // namespace

bool is_pattern_name(const std::string& name) {
    if (name.empty()) return false;
    size_t start = 0;
    while (true) {
        auto plus = name.find('+', start);
        std::string atom = name.substr(start, plus == std::string::npos
                                                  ? std::string::npos
                                                  : plus - start);
        if (!parse_atom(atom)) return false;
        if (plus == std::string::npos) return true;
        start = plus + 1;
    }
}

PatternGraph pattern_from_name(const std::string& name) {
    std::optional<PatternGraph> acc;
    size_t start = 0;
    while (true) {
        auto plus = name.find('+', start);
        std::string atom = name.substr(start, plus == std::string::npos
                                                  ? std::string::npos
                                                  : plus - start);
        auto parsed = parse_atom(atom);
        if (!parsed)
            throw std::invalid_argument("unrecognized pattern name: " + name);
        auto [n, edges] = atom_edges(*parsed, atom);
        PatternGraph h = PatternGraph::build(n, edges);
        acc = acc ? acc->disjoint_union(h) : h;
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return *acc;
}

Graph graph_from_name(const std::string& name) {
    std::optional<Graph> acc;
    size_t start = 0;
    while (true) {
        auto plus = name.find('+', start);
        std::string atom = name.substr(start, plus == std::string::npos
                                                  ? std::string::npos
                                                  : plus - start);
        auto parsed = parse_atom(atom);
        if (!parsed)
            throw std::invalid_argument("unrecognized graph name: " + name);
        auto [n, edges] = atom_edges(*parsed, atom);
        Graph g(n, edges);
        if (!acc) {
            acc = g;
        } else {
            // disjoint union with shifted ids
            Graph merged(acc->size() + n);
            for (auto [u, v] : acc->edges()) merged.add_edge(u, v);
            for (auto [u, v] : g.edges())
                merged.add_edge(u + acc->size(), v + acc->size());
            acc = merged;
        }
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return *acc;
}

}  // namespace homdens
