#include "homdens/homcount.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "homdens/treedec.hpp"

namespace homdens {

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::ClosedForm: return "closed_form";
        case Engine::TreeDp: return "tree_dp";
        case Engine::Brute: return "brute";
    }
    return "?";
}

Rat Density::value() const {
    Rat q(count, int_pow(Int(base), static_cast<unsigned long>(exp)));
    q.canonicalize();
    return q;
}

namespace {

using u128 = unsigned __int128;

Int u128_to_int(u128 v) {
    Int r(static_cast<unsigned long>(v >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(v);
    return r;
}

// Counts are bounded by N^{|H|}; pick the 128-bit accumulator whenever that
// bound fits with margin.
bool fits_u128(int n_host, int n_pattern) {
    Int bound = int_pow(Int(std::max(n_host, 1)), n_pattern);
    return mpz_sizeinbase(bound.get_mpz_t(), 2) <= 120;
}

template <class Acc>
Acc acc_from_int(const Int& v) {
    return Acc(v);
}
template <>
u128 acc_from_int<u128>(const Int& v) {
    // callers guarantee v fits one word
    return u128(mpz_get_ui(v.get_mpz_t()));
}

// Uniform adjacency view over PatternGraph / Graph patterns.
struct PatternView {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::vector<Edge> edges;

    static PatternView of(const PatternGraph& h) {
        PatternView v;
        v.n = h.size();
        v.adj.resize(v.n);
        for (int i = 0; i < v.n; ++i) v.adj[i] = h.neighbors(i);
        v.edges = h.edges();
        return v;
    }
    static PatternView of(const Graph& h) {
        PatternView v;
        v.n = h.size();
        v.adj.resize(v.n);
        v.edges = h.edges();
        for (auto [a, b] : v.edges) {
            v.adj[a].push_back(b);
            v.adj[b].push_back(a);
        }
        for (auto& a : v.adj) std::sort(a.begin(), a.end());
        return v;
    }
};

std::vector<uint64_t> full_mask(int nbits, size_t words) {
    std::vector<uint64_t> m(words, 0);
    for (int i = 0; i < nbits; ++i) m[i >> 6] |= uint64_t{1} << (i & 63);
    return m;
}

template <class F>
void for_each_bit(std::span<const uint64_t> wordspan, F&& f) {
    for (size_t wi = 0; wi < wordspan.size(); ++wi) {
        uint64_t w = wordspan[wi];
        while (w) {
            int b = std::countr_zero(w);
            f(static_cast<int>(wi * 64 + b));
            w &= w - 1;
        }
    }
}

int popcount_span(std::span<const uint64_t> s) {
    int c = 0;
    for (uint64_t w : s) c += std::popcount(w);
    return c;
}

// Connected expansion order (isolated vertices excluded): BFS per component
// starting from its maximum-degree vertex, so every non-root has a mapped
// neighbor when reached.
std::vector<int> expansion_order(const PatternView& h, int* isolated_out) {
    std::vector<int> order;
    std::vector<char> seen(h.n, 0);
    int isolated = 0;
    for (int v = 0; v < h.n; ++v)
        if (h.adj[v].empty()) {
            ++isolated;
            seen[v] = 1;
        }
    while (true) {
        int root = -1;
        for (int v = 0; v < h.n; ++v)
            if (!seen[v] && (root < 0 || h.adj[v].size() > h.adj[root].size()))
                root = v;
        if (root < 0) break;
        std::vector<int> queue{root};
        seen[root] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            order.push_back(u);
            for (int w : h.adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
    }
    if (isolated_out) *isolated_out = isolated;
    return order;
}

template <class Acc>
Acc brute_count_impl(const PatternView& h, const Graph& g,
                     const std::vector<int>& order, bool injective) {
    const int n_host = g.size();
    const size_t words = g.word_count();
    const int levels = static_cast<int>(order.size());
    if (levels == 0) return Acc(1);

    std::vector<int> pos(h.n, -1);
    for (int i = 0; i < levels; ++i) pos[order[i]] = i;
    std::vector<std::vector<int>> earlier(levels);
    for (int i = 0; i < levels; ++i)
        for (int w : h.adj[order[i]])
            if (pos[w] >= 0 && pos[w] < i) earlier[i].push_back(pos[w]);

    const std::vector<uint64_t> full = full_mask(n_host, words);
    std::vector<std::vector<uint64_t>> cand(levels,
                                            std::vector<uint64_t>(words));
    std::vector<uint64_t> used(words, 0);
    std::vector<int> image(levels, -1);

    Acc total{0};
    auto fill = [&](int i) {
        auto& c = cand[i];
        if (earlier[i].empty())
            std::copy(full.begin(), full.end(), c.begin());
        else {
            auto r0 = g.row(image[earlier[i][0]]);
            std::copy(r0.begin(), r0.end(), c.begin());
            for (size_t j = 1; j < earlier[i].size(); ++j) {
                auto r = g.row(image[earlier[i][j]]);
                for (size_t w = 0; w < words; ++w) c[w] &= r[w];
            }
        }
        if (injective)
            for (size_t w = 0; w < words; ++w) c[w] &= ~used[w];
    };

    auto rec = [&](auto&& self, int i) -> void {
        fill(i);
        if (i == levels - 1) {
            total += Acc(static_cast<unsigned>(popcount_span(cand[i])));
            return;
        }
        for_each_bit(cand[i], [&](int v) {
            image[i] = v;
            if (injective) used[v >> 6] ^= uint64_t{1} << (v & 63);
            self(self, i + 1);
            if (injective) used[v >> 6] ^= uint64_t{1} << (v & 63);
        });
    };
    rec(rec, 0);
    return total;
}

Int brute_count(const PatternView& h, const Graph& g, const EngineCaps& caps,
                bool injective) {
    if (h.n > caps.brute_max_pattern)
        throw std::invalid_argument(
            "pattern has " + std::to_string(h.n) +
            " vertices, over the brute-force cap of " +
            std::to_string(caps.brute_max_pattern) +
            "; use the tree-DP engine");
    if (g.size() == 0) return Int(h.n == 0 ? 1 : 0);
    int isolated = 0;
    std::vector<int> order = expansion_order(h, &isolated);
    if (injective) {
        // Isolated vertices still consume distinct host vertices.
        for (int v = 0; v < h.n; ++v)
            if (h.adj[v].empty()) order.push_back(v);
        isolated = 0;
    }
    Int result;
    if (fits_u128(g.size(), h.n))
        result = u128_to_int(brute_count_impl<u128>(h, g, order, injective));
    else
        result = brute_count_impl<Int>(h, g, order, injective);
    if (isolated > 0)
        result *= int_pow(Int(g.size()), static_cast<unsigned long>(isolated));
    return result;
}

// --- variable elimination ------------------------------------------------

long long ve_cost_estimate(const PatternView& h, const std::vector<int>& order,
                           int n_host) {
    long long total = 0;
    unsigned eliminated = 0;
    for (int x : order) {
        int scope = fill_degree(h.adj, eliminated, x);
        double step = 1.0;
        for (int i = 0; i <= scope; ++i) step *= n_host;
        if (step > 4e18 || (total += static_cast<long long>(step)) < 0)
            return std::numeric_limits<long long>::max();
        eliminated |= 1u << x;
    }
    return total;
}

template <class Acc>
Acc ve_count_impl(const PatternView& h, const Graph& g,
                  const std::vector<int>& order) {
    const int n_host = g.size();
    const size_t words = g.word_count();

    struct Factor {
        std::vector<int> scope;  // sorted, first entry least significant
        std::vector<Acc> table;
    };
    std::vector<Factor> factors;
    std::vector<std::vector<char>> pending(h.n, std::vector<char>(h.n, 0));
    for (auto [u, v] : h.edges) pending[u][v] = pending[v][u] = 1;

    Acc scalar{1};
    std::vector<uint64_t> candbuf(words);

    for (int x : order) {
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
        for (int y = 0; y < h.n; ++y)
            if (pending[x][y]) {
                partners.push_back(y);
                pending[x][y] = pending[y][x] = 0;
            }
        if (gathered.empty() && partners.empty()) {
            scalar *= Acc(static_cast<unsigned>(n_host));
            continue;
        }

        std::vector<int> rscope;
        {
            std::vector<char> in(h.n, 0);
            for (const auto& f : gathered)
                for (int v : f.scope)
                    if (v != x) in[v] = 1;
            for (int y : partners) in[y] = 1;
            for (int v = 0; v < h.n; ++v)
                if (in[v]) rscope.push_back(v);
        }

        // Strides of each gathered factor relative to the result scope.
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
                stride *= n_host;
            }
            lookups.push_back(std::move(lk));
        }

        std::vector<int> partner_pos(partners.size());
        for (size_t pi = 0; pi < partners.size(); ++pi)
            partner_pos[pi] = static_cast<int>(
                std::lower_bound(rscope.begin(), rscope.end(), partners[pi]) -
                rscope.begin());

        size_t rsize = 1;
        for (size_t i = 0; i < rscope.size(); ++i) rsize *= n_host;
        std::vector<Acc> table(rsize, Acc(0));
        std::vector<int> assign(rscope.size(), 0);
        std::vector<size_t> bases(lookups.size());

        for (size_t idx = 0; idx < rsize; ++idx) {
            for (size_t li = 0; li < lookups.size(); ++li) {
                size_t b = 0;
                for (size_t j = 0; j < rscope.size(); ++j)
                    b += static_cast<size_t>(assign[j]) * lookups[li].stride_r[j];
                bases[li] = b;
            }
            Acc sum{0};
            auto add_value = [&](int a) {
                if (lookups.empty()) {
                    sum += Acc(1);
                    return;
                }
                Acc prod = lookups[0].f->table[bases[0] +
                                               static_cast<size_t>(a) *
                                                   lookups[0].stride_x];
                for (size_t li = 1; li < lookups.size(); ++li)
                    prod *= lookups[li].f->table[bases[li] +
                                                 static_cast<size_t>(a) *
                                                     lookups[li].stride_x];
                sum += prod;
            };
            if (partners.empty()) {
                for (int a = 0; a < n_host; ++a) add_value(a);
            } else {
                auto r0 = g.row(assign[partner_pos[0]]);
                std::copy(r0.begin(), r0.end(), candbuf.begin());
                for (size_t pi = 1; pi < partners.size(); ++pi) {
                    auto r = g.row(assign[partner_pos[pi]]);
                    for (size_t w = 0; w < words; ++w) candbuf[w] &= r[w];
                }
                if (lookups.empty())
                    sum = Acc(static_cast<unsigned>(popcount_span(candbuf)));
                else
                    for_each_bit(candbuf, add_value);
            }
            table[idx] = sum;

            for (size_t j = 0; j < rscope.size(); ++j) {
                if (++assign[j] < n_host) break;
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

Int ve_count(const PatternView& h, const Graph& g,
             const std::vector<int>& order, const EngineCaps& caps) {
    if (g.size() == 0) return Int(h.n == 0 ? 1 : 0);
    if (ve_cost_estimate(h, order, g.size()) > caps.enum_budget)
        throw std::invalid_argument(
            "tree-DP table size exceeds the enumeration budget of " +
            std::to_string(caps.enum_budget));
    if (fits_u128(g.size(), h.n))
        return u128_to_int(ve_count_impl<u128>(h, g, order));
    return ve_count_impl<Int>(h, g, order);
}

TreeDpResult treedp_impl(const PatternView& h, const Graph& g,
                         const EngineCaps& caps) {
    EliminationOrder ord = find_elimination_order(h.adj, caps.treedp_max_width);
    TreeDpResult out;
    if (!ord.found) {
        out.fell_back = true;
        out.value = brute_count(h, g, caps, false);
        return out;
    }
    out.width = ord.width;
    out.value = ve_count(h, g, ord.order, caps);
    return out;
}

// --- closed forms ---------------------------------------------------------

template <class Acc>
Acc path_count_impl(const Graph& g, int k) {
    const int n = g.size();
    std::vector<Acc> w(n, Acc(1)), nw(n);
    for (int step = 0; step < k; ++step) {
        for (int v = 0; v < n; ++v) {
            Acc s{0};
            for_each_bit(g.row(v), [&](int u) { s += w[u]; });
            nw[v] = std::move(s);
        }
        std::swap(w, nw);
    }
    Acc total{0};
    for (const Acc& x : w) total += x;
    return total;
}

template <class Acc>
Acc c4_count_impl(const Graph& g) {
    const int n = g.size();
    Acc total{0};
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            unsigned c = static_cast<unsigned>(popcount_and(g.row(u), g.row(v)));
            total += Acc(2u) * Acc(c) * Acc(c);
        }
    for (int v = 0; v < n; ++v) {
        unsigned d = static_cast<unsigned>(g.degree(v));
        total += Acc(d) * Acc(d);
    }
    return total;
}

template <class Acc>
Acc cycle_count_impl(const Graph& g, int k) {
    const int n = g.size();
    Acc total{0};
    std::vector<Acc> w(n), nw(n);
    if (k % 2 == 0) {
        // trace(A^k) = sum of squared entries of A^{k/2}
        int half = k / 2;
        for (int s = 0; s < n; ++s) {
            std::fill(w.begin(), w.end(), Acc(0));
            w[s] = Acc(1);
            for (int step = 0; step < half; ++step) {
                for (int v = 0; v < n; ++v) {
                    Acc acc{0};
                    for_each_bit(g.row(v), [&](int u) { acc += w[u]; });
                    nw[v] = std::move(acc);
                }
                std::swap(w, nw);
            }
            for (const Acc& x : w) total += x * x;
        }
    } else {
        for (int s = 0; s < n; ++s) {
            std::fill(w.begin(), w.end(), Acc(0));
            w[s] = Acc(1);
            for (int step = 0; step < k - 1; ++step) {
                for (int v = 0; v < n; ++v) {
                    Acc acc{0};
                    for_each_bit(g.row(v), [&](int u) { acc += w[u]; });
                    nw[v] = std::move(acc);
                }
                std::swap(w, nw);
            }
            Acc acc{0};
            for_each_bit(g.row(s), [&](int u) { acc += w[u]; });
            total += acc;
        }
    }
    return total;
}

template <class Acc>
Acc acc_pow(Acc base, int e) {
    Acc out{1};
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

// h_{K_{a,b}} = sum over b-vertex sequences T of |N(T)|^a, enumerated over
// the distinct supports of T with surjection multiplicities.
template <class Acc>
Acc kab_count_impl(const Graph& g, int a, int b) {
    const int n = g.size();
    const size_t words = g.word_count();
    std::vector<Acc> surj(b + 1, Acc(0));
    for (int j = 1; j <= b; ++j)
        surj[j] = acc_from_int<Acc>(surjection_count(b, j));
    std::vector<std::vector<uint64_t>> inter(b + 1,
                                             std::vector<uint64_t>(words));
    inter[0] = full_mask(n, words);
    Acc total{0};
    auto rec = [&](auto&& self, int first, int depth) -> void {
        for (int v = first; v < n; ++v) {
            auto& cur = inter[depth + 1];
            auto r = g.row(v);
            int cnt = 0;
            for (size_t w = 0; w < words; ++w) {
                cur[w] = inter[depth][w] & r[w];
                cnt += std::popcount(cur[w]);
            }
            if (cnt > 0)
                total += surj[depth + 1] *
                         acc_pow(Acc(static_cast<unsigned>(cnt)), a);
            // supersets of a set with empty common neighborhood contribute 0
            if (depth + 1 < b && cnt > 0) self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return total;
}

}  // namespace

Int hom_count_path(const Graph& g, int k) {
    if (fits_u128(g.size(), k + 1))
        return u128_to_int(path_count_impl<u128>(g, k));
    return path_count_impl<Int>(g, k);
}

Int hom_count_cycle(const Graph& g, int k) {
    if (k == 4) {
        if (fits_u128(g.size(), 4)) return u128_to_int(c4_count_impl<u128>(g));
        return c4_count_impl<Int>(g);
    }
    if (fits_u128(g.size(), k))
        return u128_to_int(cycle_count_impl<u128>(g, k));
    return cycle_count_impl<Int>(g, k);
}

Int hom_count_kab(const Graph& g, int a, int b) {
    if (a < 1 || b < 1)
        throw std::invalid_argument("complete bipartite parts must be >= 1");
    if (b > a) std::swap(a, b);  // enumerate over the smaller sequence side
    // surjection multiplicities fit a word only up to b = 15
    if (b <= 15 && fits_u128(g.size(), a + b))
        return u128_to_int(kab_count_impl<u128>(g, a, b));
    return kab_count_impl<Int>(g, a, b);
}

std::optional<ClosedFormShape> recognize_shape(const PatternGraph& h) {
    ClosedFormShape s{};
    if (h.edge_count() == 0) {
        s.kind = ClosedFormShape::Edgeless;
        return s;
    }
    for (int v = 0; v < h.size(); ++v)
        if (h.degree(v) == 0) return std::nullopt;
    if (h.components().size() != 1) return std::nullopt;
    int n = h.size(), m = h.edge_count();
    int max_deg = 0, deg1 = 0;
    for (int v = 0; v < n; ++v) {
        max_deg = std::max(max_deg, h.degree(v));
        if (h.degree(v) == 1) ++deg1;
    }
    if (m == n - 1 && max_deg <= 2 && deg1 == 2) {
        s.kind = ClosedFormShape::Path;
        s.k = m;
        return s;
    }
    if (m == n && max_deg == 2) {
        s.kind = ClosedFormShape::Cycle;
        s.k = m;
        return s;
    }
    int p0 = h.part_size(0), p1 = h.part_size(1);
    if (p0 >= 1 && p1 >= 1 && m == p0 * p1) {
        s.kind = ClosedFormShape::CompleteBipartite;
        s.a = p0;
        s.b = p1;
        return s;
    }
    return std::nullopt;
}

Int hom_count_closed_form(const PatternGraph& h, const Graph& g) {
    auto shape = recognize_shape(h);
    if (!shape)
        throw std::invalid_argument(
            "pattern is not a recognized closed-form shape (path, cycle, "
            "complete bipartite); use the generic engines");
    switch (shape->kind) {
        case ClosedFormShape::Edgeless:
            return int_pow(Int(g.size()), static_cast<unsigned long>(h.size()));
        case ClosedFormShape::Path:
            return hom_count_path(g, shape->k);
        case ClosedFormShape::Cycle:
            return hom_count_cycle(g, shape->k);
        case ClosedFormShape::CompleteBipartite:
            return hom_count_kab(g, shape->a, shape->b);
    }
    throw std::logic_error("unreachable");
}

std::optional<Int> try_closed_form(const PatternGraph& h, const Graph& g) {
    if (!recognize_shape(h)) return std::nullopt;
    return hom_count_closed_form(h, g);
}

Int hom_count_brute(const PatternGraph& h, const Graph& g,
                    const EngineCaps& caps) {
    return brute_count(PatternView::of(h), g, caps, false);
}

Int hom_count_brute(const Graph& h, const Graph& g, const EngineCaps& caps) {
    return brute_count(PatternView::of(h), g, caps, false);
}

TreeDpResult hom_count_treedp(const PatternGraph& h, const Graph& g,
                              const EngineCaps& caps) {
    return treedp_impl(PatternView::of(h), g, caps);
}

TreeDpResult hom_count_treedp(const Graph& h, const Graph& g,
                              const EngineCaps& caps) {
    return treedp_impl(PatternView::of(h), g, caps);
}

DensityResult density(const PatternGraph& h, const Graph& g,
                      const EngineCaps& caps) {
    if (g.size() == 0)
        throw std::invalid_argument("density of a pattern in an empty graph");
    DensityResult out;
    out.density.base = g.size();
    out.density.exp = h.size();
    if (auto cf = try_closed_form(h, g)) {
        out.density.count = *cf;
        out.engine = Engine::ClosedForm;
        return out;
    }
    TreeDpResult td = hom_count_treedp(h, g, caps);
    out.density.count = td.value;
    out.engine = td.fell_back ? Engine::Brute : Engine::TreeDp;
    out.treedp_width = td.width;
    out.fallback_notice = td.fell_back;
    return out;
}

DensityResult density_with_engine(const PatternGraph& h, const Graph& g,
                                  Engine engine, const EngineCaps& caps) {
    if (g.size() == 0)
        throw std::invalid_argument("density of a pattern in an empty graph");
    DensityResult out;
    out.density.base = g.size();
    out.density.exp = h.size();
    out.engine = engine;
    switch (engine) {
        case Engine::ClosedForm:
            out.density.count = hom_count_closed_form(h, g);
            break;
        case Engine::TreeDp: {
            TreeDpResult td = hom_count_treedp(h, g, caps);
            out.density.count = td.value;
            out.treedp_width = td.width;
            out.fallback_notice = td.fell_back;
            if (td.fell_back) out.engine = Engine::Brute;
            break;
        }
        case Engine::Brute:
            out.density.count = hom_count_brute(h, g, caps);
            break;
    }
    return out;
}

Rat edge_density_t(const Graph& g) {
    if (g.size() == 0)
        throw std::invalid_argument("edge density of an empty graph");
    Rat q(Int(2 * g.edge_count()), Int(g.size()) * Int(g.size()));
    q.canonicalize();
    return q;
}

Int injective_count(const Graph& h, const Graph& g, const EngineCaps& caps) {
    if (g.size() < h.size()) return 0;
    return brute_count(PatternView::of(h), g, caps, true);
}

InjectiveResult injective_density(const PatternGraph& h, const Graph& g,
                                  const EngineCaps& caps) {
    InjectiveResult out;
    if (g.size() < h.size()) {
        out.count = 0;
        out.density = 0;
        out.undersized = true;
        return out;
    }
    out.count = brute_count(PatternView::of(h), g, caps, true);
    Rat q(out.count, falling_factorial(g.size(), h.size()));
    q.canonicalize();
    out.density = q;
    return out;
}

}  // namespace homdens
