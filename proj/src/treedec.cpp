#include "homdens/treedec.hpp"

#include <algorithm>
#include <stdexcept>

namespace homdens {

int fill_degree(const std::vector<std::vector<int>>& adj, unsigned eliminated,
                int v) {
    unsigned seen = 1u << v;
    unsigned frontier = 1u << v;
    unsigned reached = 0;
    int n = static_cast<int>(adj.size());
    while (frontier) {
        unsigned next = 0;
        for (int u = 0; u < n; ++u) {
            if (!(frontier & (1u << u))) continue;
            for (int w : adj[u]) {
                unsigned bit = 1u << w;
                if (seen & bit) continue;
                seen |= bit;
                if (eliminated & bit)
                    next |= bit;  // pass through, keep exploring
                else
                    reached |= bit;
            }
        }
        frontier = next;
    }
    return __builtin_popcount(reached);
}

EliminationOrder find_elimination_order(const std::vector<std::vector<int>>& adj,
                                        int max_width) {
    int n = static_cast<int>(adj.size());
    if (n > 20)
        throw std::invalid_argument("pattern too large for exact treewidth search");
    EliminationOrder result;
    if (n == 0) {
        result.found = true;
        return result;
    }
    unsigned full = (1u << n) - 1;
    for (int w = 0; w <= std::min(max_width, n - 1); ++w) {
        std::vector<char> ok(static_cast<size_t>(full) + 1u, 0);
        ok[0] = 1;
        for (unsigned s = 1; s <= full; ++s) {
            for (unsigned rest = s; rest; rest &= rest - 1) {
                int v = __builtin_ctz(rest);
                unsigned prev = s & ~(1u << v);
                if (!ok[prev]) continue;
                if (fill_degree(adj, prev, v) <= w) {
                    ok[s] = 1;
                    break;
                }
            }
        }
        if (!ok[full]) continue;
        // Reconstruct backward (ok[S] means S is eliminable from scratch),
        // preferring the lowest eligible vertex for determinism.
        result.width = w;
        result.found = true;
        unsigned s = full;
        while (s) {
            for (int v = 0; v < n; ++v) {
                unsigned bit = 1u << v;
                if (!(s & bit)) continue;
                unsigned prev = s & ~bit;
                if (ok[prev] && fill_degree(adj, prev, v) <= w) {
                    result.order.push_back(v);
                    s = prev;
                    break;
                }
            }
        }
        std::reverse(result.order.begin(), result.order.end());
        return result;
    }
    return result;
}

EliminationOrder find_elimination_order(const PatternGraph& h, int max_width) {
    std::vector<std::vector<int>> adj(h.size());
    for (int v = 0; v < h.size(); ++v) adj[v] = h.neighbors(v);
    return find_elimination_order(adj, max_width);
}

}  // namespace homdens
