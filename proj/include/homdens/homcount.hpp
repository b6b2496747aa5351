#pragma once

#include <optional>
#include <string>

#include "homdens/graph.hpp"
#include "homdens/pattern.hpp"
#include "homdens/rational.hpp"

namespace homdens {

struct EngineCaps {
    int brute_max_pattern = 10;
    int treedp_max_width = 4;
    long long enum_budget = 2'000'000'000;  // elementary table operations
};

enum class Engine { ClosedForm, TreeDp, Brute };
const char* engine_name(Engine e);

// Exact homomorphism density t_H(G) = h_H(G) / N^{|H|}, denominator kept in
// factored form.
struct Density {
    Int count;
    long base = 1;
    int exp = 0;

    Rat value() const;
    double to_double() const { return rat_double(value()); }
    std::string str() const { return rat_str(value()); }
};

// --- engines ---------------------------------------------------------

// Backtracking over a connected expansion order with bitset candidate sets.
Int hom_count_brute(const PatternGraph& h, const Graph& g,
                    const EngineCaps& caps = {});
Int hom_count_brute(const Graph& h, const Graph& g,
                    const EngineCaps& caps = {});

struct TreeDpResult {
    Int value;
    int width = -1;           // induced width used, -1 if fell back
    bool fell_back = false;   // no decomposition of width <= cap; used brute
};

// Variable elimination along an exact minimum-width elimination order.
TreeDpResult hom_count_treedp(const PatternGraph& h, const Graph& g,
                              const EngineCaps& caps = {});
TreeDpResult hom_count_treedp(const Graph& h, const Graph& g,
                              const EngineCaps& caps = {});

struct ClosedFormShape {
    enum Kind { Edgeless, Path, Cycle, CompleteBipartite } kind;
    int k = 0;          // edges of the path/cycle
    int a = 0, b = 0;   // complete bipartite part sizes
};
std::optional<ClosedFormShape> recognize_shape(const PatternGraph& h);

// Exact counts for the recognized families: paths and cycles by iterated
// adjacency application, K_{a,b} by summing |N(T)|^a over b-vertex sequence
// supports with surjection multiplicities.
Int hom_count_closed_form(const PatternGraph& h, const Graph& g);
std::optional<Int> try_closed_form(const PatternGraph& h, const Graph& g);

Int hom_count_path(const Graph& g, int k);
Int hom_count_cycle(const Graph& g, int k);
Int hom_count_kab(const Graph& g, int a, int b);

// --- densities --------------------------------------------------------

struct DensityResult {
    Density density;
    Engine engine;
    int treedp_width = -1;
    bool fallback_notice = false;
};

// Preferred engine order: closed form, tree DP, brute.
DensityResult density(const PatternGraph& h, const Graph& g,
                      const EngineCaps& caps = {});
DensityResult density_with_engine(const PatternGraph& h, const Graph& g,
                                  Engine engine, const EngineCaps& caps = {});

Rat edge_density_t(const Graph& g);  // t_{K_2}(G) = 2M / N^2

struct InjectiveResult {
    Int count;
    Rat density;
    bool undersized = false;  // |G| < |H|; density 0 by convention
};

InjectiveResult injective_density(const PatternGraph& h, const Graph& g,
                                  const EngineCaps& caps = {});
Int injective_count(const Graph& h, const Graph& g,
                    const EngineCaps& caps = {});

}  // namespace homdens
