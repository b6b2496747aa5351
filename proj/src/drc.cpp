#include "homdens/drc.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "homdens/generators.hpp"

namespace homdens {

Rat DrcParams::constant() const {
    if (c) return *c;
    Rat q(Int(1), int_pow(Int(2 * n), static_cast<unsigned long>(2 * n)));
    q.canonicalize();
    return q;
}

void DrcParams::validate() const {
    if (r < 1) throw std::invalid_argument("drc: r must be >= 1");
    if (d < 1 || d > n) throw std::invalid_argument("drc: need 1 <= d <= n");
    Rat cc = constant();
    if (cc <= 0 || cc > 1)
        throw std::invalid_argument("drc: rarity constant must be in (0,1]");
}

namespace {

// max z in [0..n_host] with z^{rd} <= rhs
long rare_cutoff_for(const Rat& rhs, int rd, int n_host) {
    long lo = 0, hi = n_host;
    while (lo < hi) {
        long mid = (lo + hi + 1) / 2;
        Int lhs = int_pow(Int(mid), static_cast<unsigned long>(rd)) *
                  rhs.get_den();
        if (lhs <= rhs.get_num())
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// min z in [0..n_host+1] with z^{rd} >= rhs (n_host+1 means unreachable)
long edge_cutoff_for(const Rat& rhs, int rd, int n_host) {
    long lo = 0, hi = n_host + 1;
    while (lo < hi) {
        long mid = (lo + hi) / 2;
        Int lhs = int_pow(Int(mid), static_cast<unsigned long>(rd)) *
                  rhs.get_den();
        if (lhs >= rhs.get_num())
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

struct SupportClass {
    uint64_t mask;
    int size;
    int nbhd;
    bool good;
};

struct ClassifyDetail {
    DrcReport report;
    std::vector<SupportClass> supports;
};

Int subset_count_up_to(int n, int maxk) {
    Int total = 0;
    for (int j = 1; j <= maxk && j <= n; ++j) total += binomial(n, j);
    return total;
}

ClassifyDetail classify_exhaustive(const Graph& g, const DrcParams& params,
                                   const DrcOptions& opts, bool want_supports) {
    const int n_host = g.size();
    const int r = params.r, d = params.d, n = params.n, rd = r * d;
    const Rat c = params.constant();

    ClassifyDetail out;
    DrcReport& rep = out.report;
    rep.params = params;
    rep.c_used = c;
    rep.n_host = n_host;
    rep.exhaustive = true;

    rep.h_krd = hom_count_kab(g, d, r);
    if (rep.h_krd == 0)
        throw std::invalid_argument(
            "t_{K_{r,d}}(G) = 0: the classification is vacuous on this host");
    rep.t_krd = Rat(rep.h_krd, int_pow(Int(n_host),
                                       static_cast<unsigned long>(r + d)));
    rep.t_krd.canonicalize();

    if (n_host > 64)
        throw std::invalid_argument(
            "exhaustive classification supports hosts up to 64 vertices; "
            "use sampling mode");
    if (subset_count_up_to(n_host, std::max(r, n)) > opts.enum_budget)
        throw BudgetExceeded(
            "subset enumeration exceeds the budget; use sampling mode");

    // Rarity cutoffs per k: |N(S)| <= c t^{k/(rd)} N decided as
    // |N(S)|^{rd} <= c^{rd} t^k N^{rd} in exact integers.
    std::vector<long> cutoff(n + 1, 0);
    rep.per_k.resize(n - d + 1);
    for (int k = d; k <= n; ++k) {
        Rat rhs = rat_pow(c, static_cast<unsigned long>(rd)) *
                  rat_pow(rep.t_krd, static_cast<unsigned long>(k)) *
                  rat_pow(Rat(n_host), static_cast<unsigned long>(rd));
        cutoff[k] = rare_cutoff_for(rhs, rd, n_host);
        auto& pk = rep.per_k[k - d];
        pk.k = k;
        pk.rare_cutoff = cutoff[k];
        pk.threshold = rat_double(c) *
                       std::pow(rat_double(rep.t_krd),
                                static_cast<double>(k) / rd) *
                       n_host;
    }

    std::vector<uint64_t> row(n_host);
    for (int v = 0; v < n_host; ++v) row[v] = g.row(v)[0];
    const uint64_t all =
        (n_host == 64) ? ~uint64_t{0} : ((uint64_t{1} << n_host) - 1);

    // Surjection table.
    int maxk = std::max(r, n);
    std::vector<std::vector<Int>> surj(maxk + 1, std::vector<Int>(maxk + 1));
    for (int k = 1; k <= maxk; ++k)
        for (int j = 1; j <= k; ++j) surj[k][j] = surjection_count(k, j);

    // Pass 1: rare supports U (|U| <= n). For each rare (U, k), spread the
    // sequence count over the T supports W inside N(U); W subseteq N(U) is
    // the same condition as U subseteq N(W).
    std::unordered_map<uint64_t, std::vector<Int>> rare_in;  // W -> per-k
    std::vector<int> kvec;

    auto spread = [&](uint64_t nbhd_mask, const std::vector<int>& rare_ks,
                      int usize) {
        std::vector<int> members;
        for (uint64_t m = nbhd_mask; m; m &= m - 1)
            members.push_back(std::countr_zero(m));
        std::vector<int> pick;
        auto rec = [&](auto&& self, size_t fromi, uint64_t wmask) -> void {
            if (!pick.empty()) {
                auto& slot = rare_in[wmask];
                if (slot.empty()) slot.assign(n - d + 1, Int(0));
                for (int k : rare_ks) slot[k - d] += surj[k][usize];
            }
            if (static_cast<int>(pick.size()) == r) return;
            for (size_t i = fromi; i < members.size(); ++i) {
                pick.push_back(members[i]);
                self(self, i + 1, wmask | (uint64_t{1} << members[i]));
                pick.pop_back();
            }
        };
        rec(rec, 0, 0);
    };

    for (auto& pk : rep.per_k) {
        pk.rare_count = 0;
        pk.x_k = 0;
        pk.x_k_dual = 0;
        pk.bad_count = 0;
    }

    auto pass1 = [&](auto&& self, int from, int depth, uint64_t inter) -> void {
        for (int v = from; v < n_host; ++v) {
            uint64_t cur = inter & row[v];
            int usize = depth + 1;
            int cnt = std::popcount(cur);
            kvec.clear();
            for (int k = std::max(d, usize); k <= n; ++k)
                if (cnt <= cutoff[k]) kvec.push_back(k);
            if (!kvec.empty()) {
                Int cnt_r = int_pow(Int(cnt), static_cast<unsigned long>(r));
                for (int k : kvec) {
                    auto& pk = rep.per_k[k - d];
                    pk.rare_count += surj[k][usize];
                    pk.x_k += surj[k][usize] * cnt_r;
                }
                if (cnt > 0) spread(cur, kvec, usize);
            }
            if (usize < n) self(self, v + 1, usize, cur);
        }
    };
    pass1(pass1, 0, 0, all);

    // Pass 2: classify T supports W (|W| <= r).
    rep.good_count = 0;
    rep.bad_count = 0;
    rep.good_sum = 0;
    std::vector<Int> no_rare(n - d + 1, Int(0));

    auto pass2 = [&](auto&& self, int from, int depth, uint64_t inter,
                     uint64_t wmask) -> void {
        for (int v = from; v < n_host; ++v) {
            uint64_t cur = inter & row[v];
            uint64_t wm = wmask | (uint64_t{1} << v);
            int wsize = depth + 1;
            int cnt = std::popcount(cur);
            auto it = rare_in.find(wm);
            const std::vector<Int>& rin = it == rare_in.end() ? no_rare
                                                              : it->second;
            Int seqs = surj[r][wsize];
            bool good = true;
            for (int k = d; k <= n; ++k) {
                // bad w.r.t. k: rare count in N(T) >= |N(T)|^k / (2n)
                Int lhs = rin[k - d] * Int(2 * n);
                Int rhs = int_pow(Int(cnt), static_cast<unsigned long>(k));
                if (lhs >= rhs) {
                    good = false;
                    rep.per_k[k - d].bad_count += seqs;
                }
                rep.per_k[k - d].x_k_dual += seqs * rin[k - d];
            }
            if (good) {
                rep.good_count += seqs;
                rep.good_sum +=
                    seqs * int_pow(Int(cnt), static_cast<unsigned long>(d));
            } else {
                rep.bad_count += seqs;
            }
            if (want_supports)
                out.supports.push_back(SupportClass{wm, wsize, cnt, good});
            if (wsize < r) self(self, v + 1, wsize, cur, wm);
        }
    };
    pass2(pass2, 0, 0, all, 0);

    rep.verdict = (2 * rep.good_sum >= rep.h_krd);
    return out;
}

DrcReport classify_sampled(const Graph& g, const DrcParams& params,
                           const DrcOptions& opts) {
    const int n_host = g.size();
    const int r = params.r, d = params.d, n = params.n, rd = r * d;
    const Rat c = params.constant();
    if (opts.samples <= 0)
        throw std::invalid_argument("sampling mode needs a positive sample count");

    DrcReport rep;
    rep.params = params;
    rep.c_used = c;
    rep.n_host = n_host;
    rep.exhaustive = false;
    rep.samples = opts.samples;

    rep.h_krd = hom_count_kab(g, d, r);
    if (rep.h_krd == 0)
        throw std::invalid_argument(
            "t_{K_{r,d}}(G) = 0: the classification is vacuous on this host");
    rep.t_krd = Rat(rep.h_krd, int_pow(Int(n_host),
                                       static_cast<unsigned long>(r + d)));
    rep.t_krd.canonicalize();

    std::vector<long> cutoff(n + 1, 0);
    rep.per_k.resize(n - d + 1);
    for (int k = d; k <= n; ++k) {
        Rat rhs = rat_pow(c, static_cast<unsigned long>(rd)) *
                  rat_pow(rep.t_krd, static_cast<unsigned long>(k)) *
                  rat_pow(Rat(n_host), static_cast<unsigned long>(rd));
        cutoff[k] = rare_cutoff_for(rhs, rd, n_host);
        auto& pk = rep.per_k[k - d];
        pk.k = k;
        pk.rare_cutoff = cutoff[k];
        pk.threshold = rat_double(c) *
                       std::pow(rat_double(rep.t_krd),
                                static_cast<double>(k) / rd) *
                       n_host;
        pk.rare_count = 0;
        pk.x_k = 0;
        pk.x_k_dual = 0;
        pk.bad_count = 0;
    }

    SeededRng rng(opts.seed);
    rep.good_count = 0;
    rep.bad_count = 0;
    rep.good_sum = 0;
    std::vector<int> t_seq(r), s_seq;

    for (long long it = 0; it < opts.samples; ++it) {
        for (int i = 0; i < r; ++i)
            t_seq[i] = static_cast<int>(rng.below(n_host));
        Bitset nbhd = common_neighborhood(g, t_seq);
        std::vector<int> members = nbhd.to_vector();
        int cnt = static_cast<int>(members.size());
        bool good = true;
        for (int k = d; k <= n && good; ++k) {
            if (cnt == 0) {
                good = false;  // zero rare-sequence bound holds vacuously
                rep.per_k[k - d].bad_count += 1;
                break;
            }
            long long hits = 0;
            for (long long si = 0; si < opts.inner_samples; ++si) {
                s_seq.clear();
                for (int j = 0; j < k; ++j)
                    s_seq.push_back(
                        members[rng.below(static_cast<uint64_t>(cnt))]);
                int ns = common_neighborhood_count(g, s_seq);
                if (ns <= cutoff[k]) ++hits;
            }
            if (hits * 2 * n >= opts.inner_samples) {
                good = false;
                rep.per_k[k - d].bad_count += 1;
            }
        }
        if (good) {
            rep.good_count += 1;
            rep.good_sum += int_pow(Int(cnt), static_cast<unsigned long>(d));
        } else {
            rep.bad_count += 1;
        }
    }

    // Scaled verdict estimate: 2 sum N^r >= h * samples.
    Int lhs = 2 * rep.good_sum *
              int_pow(Int(n_host), static_cast<unsigned long>(r));
    rep.verdict = (lhs >= rep.h_krd * Int(static_cast<long>(opts.samples)));
    return rep;
}

}  // namespace

DrcReport drc_classify(const Graph& g, const DrcParams& params,
                       const DrcOptions& opts) {
    params.validate();
    if (g.size() == 0) throw std::invalid_argument("empty host graph");
    if (opts.exhaustive)
        return classify_exhaustive(g, params, opts, false).report;
    return classify_sampled(g, params, opts);
}

DrcVerdict drc_verify(const Graph& g, const DrcParams& params,
                      const DrcOptions& opts) {
    if (!opts.exhaustive)
        throw std::invalid_argument("drc_verify requires exhaustive mode");
    DrcVerdict v;
    v.report = drc_classify(g, params, opts);
    v.good_sum = v.report.good_sum;
    v.h_krd = v.report.h_krd;
    v.holds = v.report.verdict;
    return v;
}

// --- Lemma 2.2 ------------------------------------------------------------

Hypergraph Hypergraph::make(int vertex_count,
                            std::vector<std::vector<int>> edges) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    std::set<std::vector<int>> dedup;
    for (auto& e : edges) {
        if (e.empty()) throw std::invalid_argument("hypergraph edges must be nonempty");
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        for (int v : e)
            if (v < 0 || v >= vertex_count)
                throw std::invalid_argument("hypergraph edge vertex out of range");
        dedup.insert(e);
    }
    Hypergraph h;
    h.vertex_count = vertex_count;
    h.edges.assign(dedup.begin(), dedup.end());
    return h;
}

int Hypergraph::min_edge_size() const {
    int m = 0;
    for (const auto& e : edges) {
        int s = static_cast<int>(e.size());
        if (m == 0 || s < m) m = s;
    }
    return m;
}

SeqHypergraph SeqHypergraph::extensional(int n,
                                         std::set<std::vector<int>> edge_set) {
    SeqHypergraph s;
    s.n_ = n;
    s.extensional_ = true;
    s.edge_set_ = std::move(edge_set);
    return s;
}

SeqHypergraph SeqHypergraph::thresholded(const Graph& host,
                                         std::vector<int> host_vertices,
                                         std::vector<long> cutoff_for_length) {
    SeqHypergraph s;
    s.n_ = static_cast<int>(host_vertices.size());
    s.extensional_ = false;
    s.host_ = &host;
    s.host_vertices_ = std::move(host_vertices);
    s.cutoffs_ = std::move(cutoff_for_length);
    return s;
}

bool SeqHypergraph::is_edge(std::span<const int> seq) const {
    if (extensional_)
        return edge_set_.count(std::vector<int>(seq.begin(), seq.end())) > 0;
    if (seq.size() >= cutoffs_.size())
        throw std::invalid_argument("sequence longer than the cutoff table");
    std::vector<int> hosts;
    hosts.reserve(seq.size());
    for (int i : seq) hosts.push_back(host_vertices_[i]);
    int cnt = common_neighborhood_count(*host_, hosts);
    return cnt >= cutoffs_[seq.size()];
}

EmbedReport hyper_embed_count(const Hypergraph& h, const SeqHypergraph& gd) {
    const int nh = h.vertex_count;
    const int n = gd.size();
    EmbedReport rep;
    rep.edge_count = static_cast<int>(h.edges.size());
    rep.total = int_pow(Int(n), static_cast<unsigned long>(nh));

    // Exhaustive map enumeration.
    Int count = 0;
    std::vector<int> phi(nh, 0);
    std::vector<int> image;
    if (n == 0 && nh > 0) {
        rep.count = 0;
    } else {
        bool done = false;
        while (!done) {
            bool ok = true;
            for (const auto& e : h.edges) {
                image.clear();
                for (int v : e) image.push_back(phi[v]);
                if (!gd.is_edge(image)) {
                    ok = false;
                    break;
                }
            }
            if (ok) count += 1;
            done = true;
            for (int i = 0; i < nh; ++i) {
                if (++phi[i] < n) {
                    done = false;
                    break;
                }
                phi[i] = 0;
            }
            if (nh == 0) break;
        }
        rep.count = count;
    }
    rep.conclusion = (2 * rep.count >= rep.total);

    int d = h.min_edge_size();
    rep.hypothesis_all = true;
    if (rep.edge_count > 0) {
        for (int k = d; k <= nh; ++k) {
            EmbedPerK pk;
            pk.k = k;
            pk.total = int_pow(Int(n), static_cast<unsigned long>(k));
            Int bad = 0;
            std::vector<int> seq(k, 0);
            if (n > 0) {
                bool done = false;
                while (!done) {
                    if (!gd.is_edge(seq)) bad += 1;
                    done = true;
                    for (int i = 0; i < k; ++i) {
                        if (++seq[i] < n) {
                            done = false;
                            break;
                        }
                        seq[i] = 0;
                    }
                }
            }
            pk.non_edges = bad;
            pk.hypothesis = (2 * rep.edge_count * pk.non_edges <= pk.total);
            rep.hypothesis_all = rep.hypothesis_all && pk.hypothesis;
            rep.per_k.push_back(std::move(pk));
        }
    }
    return rep;
}

// --- Lemma 2.3 ------------------------------------------------------------

ConstructiveBound constructive_bound(const PatternGraph& h, const Graph& g,
                                     std::optional<Rat> c,
                                     std::optional<int> r_override,
                                     std::optional<int> d_override,
                                     const DrcOptions& opts) {
    auto csp = complete_side_params(h);
    if (!csp)
        throw std::invalid_argument(
            "constructive bound needs a vertex complete to the other part "
            "(complete_side_params returned none)");
    int side = csp->side;
    int r = r_override.value_or(csp->r);
    int d = d_override.value_or(csp->d);
    if (r < 1 || r > csp->r)
        throw std::invalid_argument("r override must be in [1, " +
                                    std::to_string(csp->r) + "]");
    if (d < 1 || d > csp->d)
        throw std::invalid_argument("d override must be in [1, " +
                                    std::to_string(csp->d) + "]");
    if (g.size() == 0) throw std::invalid_argument("empty host graph");
    if (g.size() > 64)
        throw std::invalid_argument(
            "constructive bound runs exhaustively on hosts up to 64 vertices");

    const int n = h.size();
    const int n_host = g.size();
    std::vector<int> v1 = h.part(side), v2 = h.part(1 - side);
    const int n2 = static_cast<int>(v2.size());
    const int m = h.edge_count();

    ConstructiveBound out;
    out.side = CompleteSideParams{side, r, d};
    out.n = n;
    out.m = m;
    out.n2 = n2;

    DrcParams params{r, d, n, c};
    params.validate();
    out.c_used = params.constant();

    auto detail = classify_exhaustive(g, params, opts, true);
    out.t_krd = detail.report.t_krd;
    out.good_count = detail.report.good_count;

    // Edge cutoffs: a sequence R of k vertices is an edge of the sequence
    // hypergraph iff |N(R)| >= c t^{k/(rd)} N, decided by cross-powers.
    const int rd = r * d;
    std::vector<long> edge_cut(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
        Rat rhs = rat_pow(out.c_used, static_cast<unsigned long>(rd)) *
                  rat_pow(out.t_krd, static_cast<unsigned long>(k)) *
                  rat_pow(Rat(n_host), static_cast<unsigned long>(rd));
        edge_cut[k] = edge_cutoff_for(rhs, rd, n_host);
    }

    // Neighborhood hypergraph of H on V2: one edge per non-complete V1
    // vertex. Complete vertices are the first r of the complete ones.
    std::vector<int> local(h.size(), -1);
    for (int i = 0; i < n2; ++i) local[v2[i]] = i;
    std::vector<int> u_set, others;
    for (int v : v1) {
        if (h.degree(v) == n2 && static_cast<int>(u_set.size()) < r)
            u_set.push_back(v);
        else
            others.push_back(v);
    }
    std::set<std::vector<int>> hedges;
    std::vector<int> other_degs;
    for (int w : others) {
        std::vector<int> e;
        for (int y : h.neighbors(w)) e.push_back(local[y]);
        std::sort(e.begin(), e.end());
        other_degs.push_back(static_cast<int>(e.size()));
        hedges.insert(std::move(e));
    }
    std::vector<std::vector<int>> edge_list(hedges.begin(), hedges.end());

    // Edges checked as soon as their last vertex is assigned.
    std::vector<std::vector<int>> triggers(n2);
    for (size_t ei = 0; ei < edge_list.size(); ++ei)
        triggers[edge_list[ei].back()].push_back(static_cast<int>(ei));

    std::vector<uint64_t> row(n_host);
    for (int v = 0; v < n_host; ++v) row[v] = g.row(v)[0];
    std::unordered_map<uint64_t, int> nbhd_memo;
    auto nbhd_count = [&](uint64_t mask) -> int {
        auto it = nbhd_memo.find(mask);
        if (it != nbhd_memo.end()) return it->second;
        uint64_t inter = (n_host == 64) ? ~uint64_t{0}
                                        : ((uint64_t{1} << n_host) - 1);
        for (uint64_t mm = mask; mm; mm &= mm - 1)
            inter &= row[std::countr_zero(mm)];
        int cnt = std::popcount(inter);
        nbhd_memo.emplace(mask, cnt);
        return cnt;
    };

    // Extension guarantee per non-complete V1 vertex.
    Int ext = 1;
    for (int deg : other_degs) ext *= Int(edge_cut[deg]);

    // Surjection multiplicities for T supports.
    std::vector<Int> surj_r(r + 1);
    for (int j = 1; j <= r; ++j) surj_r[j] = surjection_count(r, j);

    long long work = 0;
    Int total = 0;
    std::vector<int> members, phi_host(n2, -1);
    for (const auto& sup : detail.supports) {
        if (!sup.good) continue;
        Int seqs = surj_r[sup.size];
        if (n2 == 0) {
            total += seqs * ext;
            continue;
        }
        if (sup.nbhd == 0) continue;
        double est = 1.0;
        for (int i = 0; i < n2; ++i) est *= sup.nbhd;
        work += static_cast<long long>(est);
        if (est > 4e18 || work > opts.enum_budget)
            throw BudgetExceeded(
                "constructive bound embedding enumeration exceeds the budget");

        // N(T) members.
        uint64_t inter = (n_host == 64) ? ~uint64_t{0}
                                        : ((uint64_t{1} << n_host) - 1);
        for (uint64_t mm = sup.mask; mm; mm &= mm - 1)
            inter &= row[std::countr_zero(mm)];
        members.clear();
        for (uint64_t mm = inter; mm; mm &= mm - 1)
            members.push_back(std::countr_zero(mm));

        // Count embeddings of the neighborhood hypergraph into the
        // thresholded sequence hypergraph on N(T).
        Int embed = 0;
        auto rec = [&](auto&& self, int pos, uint64_t img_masks) -> void {
            if (pos == n2) {
                embed += 1;
                return;
            }
            (void)img_masks;
            for (int hv : members) {
                phi_host[pos] = hv;
                bool ok = true;
                for (int ei : triggers[pos]) {
                    const auto& e = edge_list[ei];
                    uint64_t mask = 0;
                    for (int v : e) mask |= uint64_t{1} << phi_host[v];
                    if (nbhd_count(mask) <
                        edge_cut[static_cast<int>(e.size())]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) self(self, pos + 1, 0);
            }
        };
        rec(rec, 0, 0);
        total += seqs * embed * ext;
    }
    out.lower_bound = total;

    out.exact_count = density(h, g).density.count;
    out.certificate_ok = (out.lower_bound <= out.exact_count);

    // Lemma constant (2n)^{-2n^2} and the float view of its bound.
    out.closed_form_c =
        Rat(Int(1), int_pow(Int(2 * n), static_cast<unsigned long>(2 * n * n)));
    out.closed_form_c.canonicalize();
    out.closed_form_bound =
        rat_double(out.closed_form_c) *
        std::pow(rat_double(out.t_krd), static_cast<double>(m) / rd) *
        std::pow(static_cast<double>(n_host), n);
    return out;
}

}  // namespace homdens
