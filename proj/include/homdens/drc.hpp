#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "homdens/errors.hpp"
#include "homdens/graph.hpp"
#include "homdens/homcount.hpp"
#include "homdens/pattern.hpp"
#include "homdens/rational.hpp"

namespace homdens {

struct DrcParams {
    int r = 1;
    int d = 1;
    int n = 2;  // |H| in applications; k ranges over d..n
    // Rarity constant; empty means the paper constant (2n)^{-2n}.
    std::optional<Rat> c;

    Rat constant() const;
    bool paper_constant() const { return !c.has_value(); }
    void validate() const;
};

struct DrcOptions {
    bool exhaustive = true;
    long long samples = 0;       // number of T samples in sampling mode
    long long inner_samples = 512;  // S samples per (T, k) in sampling mode
    uint64_t seed = 0;
    long long enum_budget = 50'000'000;  // subset enumeration budget
};

struct DrcPerK {
    int k = 0;
    long rare_cutoff = 0;    // max |N(S)| that still counts as rare
    double threshold = 0.0;  // float view of c t^{k/(rd)} N
    Int rare_count;          // rare k-sequences over all of V^k
    Int x_k;                 // sum over rare S of |N(S)|^r
    Int x_k_dual;            // same value aggregated over T supports
    Int bad_count;           // T sequences bad with respect to this k
};

struct DrcReport {
    DrcParams params;
    Rat c_used;
    int n_host = 0;
    Rat t_krd;
    Int h_krd;
    std::vector<DrcPerK> per_k;
    Int good_count;  // T in V^r classified good
    Int bad_count;
    Int good_sum;    // sum of |N(T)|^d over good T
    bool verdict = false;  // 2 * good_sum >= h_krd
    bool exhaustive = true;
    long long samples = 0;
};

// Classification of Lemma 2.1 at the given constant. Exhaustive mode needs
// the host to fit subset masks (N <= 64); rarity comparisons are exact
// integer cross-powers, never roots.
DrcReport drc_classify(const Graph& g, const DrcParams& params,
                       const DrcOptions& opts = {});

struct DrcVerdict {
    Int good_sum;
    Int h_krd;
    bool holds = false;  // good_sum >= h_krd / 2
    DrcReport report;
};

DrcVerdict drc_verify(const Graph& g, const DrcParams& params,
                      const DrcOptions& opts = {});

// --- Lemma 2.2 ------------------------------------------------------------

struct Hypergraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> edges;  // nonempty vertex subsets, sorted

    static Hypergraph make(int vertex_count,
                           std::vector<std::vector<int>> edges);
    int min_edge_size() const;
};

// Strongly directed hypergraph: the edge predicate ranges over vertex
// sequences. Either extensional or thresholded over a host graph.
class SeqHypergraph {
public:
    static SeqHypergraph extensional(int n,
                                     std::set<std::vector<int>> edge_set);
    // Vertex i of the sequence hypergraph is host_vertices[i]; a sequence R
    // is an edge iff |N_host(set of images)| >= cutoff_for_length[|R|].
    static SeqHypergraph thresholded(const Graph& host,
                                     std::vector<int> host_vertices,
                                     std::vector<long> cutoff_for_length);

    int size() const { return n_; }
    bool is_edge(std::span<const int> seq) const;

private:
    int n_ = 0;
    bool extensional_ = false;
    std::set<std::vector<int>> edge_set_;
    const Graph* host_ = nullptr;
    std::vector<int> host_vertices_;
    std::vector<long> cutoffs_;
};

struct EmbedPerK {
    int k = 0;
    Int non_edges;  // sequences of k vertices that are not edges
    Int total;      // N^k
    bool hypothesis = false;  // 2e * non_edges <= N^k
};

struct EmbedReport {
    Int count;  // homomorphisms H -> Gd
    Int total;  // N^h
    bool conclusion = false;     // 2 * count >= N^h
    bool hypothesis_all = false; // every per-k hypothesis holds
    int edge_count = 0;
    std::vector<EmbedPerK> per_k;
};

EmbedReport hyper_embed_count(const Hypergraph& h, const SeqHypergraph& gd);

// --- Lemma 2.3 ------------------------------------------------------------

struct ConstructiveBound {
    CompleteSideParams side;  // orientation used (V1 = side with r, d)
    int n = 0, m = 0, n2 = 0;
    Rat c_used;
    Rat t_krd;
    Int lower_bound;       // certified: lower_bound <= h_H(G)
    Int exact_count;       // from the preferred engine
    bool certificate_ok = false;
    Int good_count;
    Rat closed_form_c;     // (2n)^{-2n^2} or the relaxed constant
    double closed_form_bound = 0.0;  // c' t^{m/rd} N^n, float view
};

// Executes the constructive pipeline: classify T sequences, embed the
// neighborhood hypergraph of H into the thresholded sequence hypergraph on
// N(T), and multiply by per-vertex extension guarantees. r and d default to
// complete_side_params(h) and may be overridden downward.
ConstructiveBound constructive_bound(const PatternGraph& h, const Graph& g,
                                     std::optional<Rat> c = std::nullopt,
                                     std::optional<int> r_override = std::nullopt,
                                     std::optional<int> d_override = std::nullopt,
                                     const DrcOptions& opts = {});

}  // namespace homdens
