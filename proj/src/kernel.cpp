#include "homdens/kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "homdens/treedec.hpp"

namespace homdens {

Kernel Kernel::make(std::vector<std::vector<Rat>> weights,
                    std::vector<Rat> measure) {
    size_t q = measure.size();
    if (q == 0) throw std::invalid_argument("kernel must have at least one block");
    if (weights.size() != q)
        throw std::invalid_argument("kernel weight matrix must be q x q");
    for (const auto& row : weights)
        if (row.size() != q)
            throw std::invalid_argument("kernel weight matrix must be q x q");
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) {
            if (weights[i][j] < 0)
                throw std::invalid_argument("kernel weights must be nonnegative");
            if (weights[i][j] != weights[j][i])
                throw std::invalid_argument("kernel weight matrix must be symmetric");
        }
    Rat mass = 0;
    for (const auto& m : measure) {
        if (m < 0) throw std::invalid_argument("kernel measure must be nonnegative");
        mass += m;
    }
    if (mass != 1)
        throw std::invalid_argument("kernel measure must sum to exactly 1, got " +
                                    rat_str(mass));
    Kernel k;
    k.weights = std::move(weights);
    k.measure = std::move(measure);
    return k;
}

Kernel Kernel::constant(const Rat& p) {
    return make({{p}}, {Rat(1)});
}

Kernel Kernel::from_graph(const Graph& g) {
    int n = g.size();
    if (n == 0) throw std::invalid_argument("kernel of an empty graph");
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n, Rat(0)));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && g.adjacent(u, v)) w[u][v] = 1;
    std::vector<Rat> mu(n, Rat(1, n));
    for (auto& m : mu) m.canonicalize();
    return make(std::move(w), std::move(mu));
}

Rat kernel_edge_density(const Kernel& k) {
    Rat total = 0;
    for (int i = 0; i < k.size(); ++i)
        for (int j = 0; j < k.size(); ++j)
            total += k.measure[i] * k.measure[j] * k.weights[i][j];
    return total;
}

Rat kernel_density(const PatternGraph& h, const Kernel& k,
                   const EngineCaps& caps) {
    const int q = k.size();
    EliminationOrder ord = find_elimination_order(h, h.size());
    (void)caps;

    struct Factor {
        std::vector<int> scope;
        std::vector<Rat> table;
    };
    std::vector<Factor> factors;
    std::vector<std::vector<char>> pending(h.size(),
                                           std::vector<char>(h.size(), 0));
    for (auto [u, v] : h.edges()) pending[u][v] = pending[v][u] = 1;

    Rat scalar = 1;
    for (int x : ord.order) {
        std::vector<Factor> gathered;
        for (size_t i = 0; i < factors.size();) {
            if (std::binary_search(factors[i].scope.begin(),
                                   factors[i].scope.end(), x)) {
                gathered.push_back(std::move(factors[i]));
                factors[i] = std::move(factors.back());
                factors.pop_back();
            } else {
                ++i;
            }
        }
        std::vector<int> partners;
        for (int y = 0; y < h.size(); ++y)
            if (pending[x][y]) {
                partners.push_back(y);
                pending[x][y] = pending[y][x] = 0;
            }
        if (gathered.empty() && partners.empty()) {
            Rat mass = 0;
            for (const auto& m : k.measure) mass += m;
            scalar *= mass;
            continue;
        }
        std::vector<int> rscope;
        {
            std::vector<char> in(h.size(), 0);
            for (const auto& f : gathered)
                for (int v : f.scope)
                    if (v != x) in[v] = 1;
            for (int y : partners) in[y] = 1;
            for (int v = 0; v < h.size(); ++v)
                if (in[v]) rscope.push_back(v);
        }
        struct Lookup {
            const Factor* f;
            size_t stride_x = 0;
            std::vector<size_t> stride_r;
        };
        std::vector<Lookup> lookups;
        for (const auto& f : gathered) {
            Lookup lk{&f, 0, std::vector<size_t>(rscope.size(), 0)};
            size_t stride = 1;
            for (int v : f.scope) {
                if (v == x) {
                    lk.stride_x = stride;
                } else {
                    auto it = std::lower_bound(rscope.begin(), rscope.end(), v);
                    lk.stride_r[it - rscope.begin()] = stride;
                }
                stride *= q;
            }
            lookups.push_back(std::move(lk));
        }
        std::vector<int> partner_pos(partners.size());
        for (size_t pi = 0; pi < partners.size(); ++pi)
            partner_pos[pi] = static_cast<int>(
                std::lower_bound(rscope.begin(), rscope.end(), partners[pi]) -
                rscope.begin());

        size_t rsize = 1;
        for (size_t i = 0; i < rscope.size(); ++i) rsize *= q;
        std::vector<Rat> table(rsize, Rat(0));
        std::vector<int> assign(rscope.size(), 0);

        for (size_t idx = 0; idx < rsize; ++idx) {
            Rat sum = 0;
            for (int a = 0; a < q; ++a) {
                Rat prod = k.measure[a];
                if (prod == 0) continue;
                for (size_t pi = 0; pi < partners.size() && prod != 0; ++pi)
                    prod *= k.weights[a][assign[partner_pos[pi]]];
                if (prod == 0) continue;
                for (const auto& lk : lookups) {
                    size_t b = 0;
                    for (size_t j = 0; j < rscope.size(); ++j)
                        b += static_cast<size_t>(assign[j]) * lk.stride_r[j];
                    prod *= lk.f->table[b + static_cast<size_t>(a) * lk.stride_x];
                    if (prod == 0) break;
                }
                sum += prod;
            }
            table[idx] = sum;
            for (size_t j = 0; j < rscope.size(); ++j) {
                if (++assign[j] < q) break;
                assign[j] = 0;
            }
        }

        if (rscope.empty())
            scalar *= table[0];
        else
            factors.push_back(Factor{std::move(rscope), std::move(table)});
    }
    return scalar;
}

Rat kernel_density_brute(const PatternGraph& h, const Kernel& k) {
    const int q = k.size();
    const int n = h.size();
    std::vector<int> assign(n, 0);
    Rat total = 0;
    auto rec = [&](auto&& self, int v, Rat running) -> void {
        if (v == n) {
            total += running;
            return;
        }
        for (int a = 0; a < q; ++a) {
            Rat prod = running * k.measure[a];
            for (int w : h.neighbors(v)) {
                if (w >= v) break;  // neighbors sorted; only earlier ones bind
                prod *= k.weights[a][assign[w]];
                if (prod == 0) break;
            }
            if (prod == 0) continue;
            assign[v] = a;
            self(self, v + 1, prod);
        }
    };
    rec(rec, 0, Rat(1));
    return total;
}

}  // namespace homdens
