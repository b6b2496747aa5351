#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "homdens/graph.hpp"
#include "homdens/rational.hpp"

namespace homdens {

// All randomness flows through this wrapper: mt19937_64 (bit-exact across
// platforms) with rejection sampling for bounded draws and exact Bernoulli
// trials on rationals. std::*_distribution is avoided on purpose (not
// portable across standard library implementations).
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    uint64_t below(uint64_t bound);

    // Exact Bernoulli(p) for rational p in [0,1].
    bool bernoulli(const Rat& p);

private:
    std::mt19937_64 eng_;
};

// Identifier recorded in every report that depends on generated randomness.
const char* rng_identifier();

struct GenSpec {
    std::string family;
    std::map<std::string, std::string> params;

    // Compact form "family:key=val,key=val", e.g. "gnp:n=50,p=1/2,seed=7".
    static GenSpec parse(const std::string& text);

    std::string canonical() const;

    bool has(const std::string& key) const { return params.count(key) > 0; }
    long get_int(const std::string& key) const;
    Rat get_rat(const std::string& key) const;
    uint64_t get_seed() const;
};

// Families: gnp, random_bipartite, complete, complete_bipartite, path,
// cycle, star, hypercube, paley, two_cliques, blow_up. Deterministic for a
// fixed spec.
Graph generate(const GenSpec& spec);

// Toggles `flips` distinct vertex pairs chosen by the seeded stream.
Graph perturb(const Graph& g, long long flips, uint64_t seed);

}  // namespace homdens
