#pragma once

#include <vector>

#include "homdens/homcount.hpp"
#include "homdens/pattern.hpp"
#include "homdens/rational.hpp"

namespace homdens {

// Finite step kernel: symmetric nonnegative q x q weight matrix with a
// vertex measure summing to exactly 1. Diagonal entries are allowed.
struct Kernel {
    std::vector<std::vector<Rat>> weights;
    std::vector<Rat> measure;

    int size() const { return static_cast<int>(measure.size()); }

    // Validates symmetry, nonnegativity, and unit mass.
    static Kernel make(std::vector<std::vector<Rat>> weights,
                       std::vector<Rat> measure);

    static Kernel constant(const Rat& p);

    // Adjacency 0/1 weights with the uniform measure 1/N.
    static Kernel from_graph(const Graph& g);
};

// t_{K_2} of the kernel: sum_{i,j} mu_i mu_j w_ij.
Rat kernel_edge_density(const Kernel& k);

// Exact homomorphism density of H in the kernel, by variable elimination
// over the same optimal order the graph engine uses.
Rat kernel_density(const PatternGraph& h, const Kernel& k,
                   const EngineCaps& caps = {});

// Independent direct enumeration over q^{|H|} assignments (cross-check
// engine; exponential, for small patterns only).
Rat kernel_density_brute(const PatternGraph& h, const Kernel& k);

}  // namespace homdens
