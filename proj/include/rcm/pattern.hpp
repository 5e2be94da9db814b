#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcm/rational.hpp"

namespace rcm {

// Connected simple pattern graph on vertices 0..vcount-1. Subgraph counts
// everywhere in the artifact are ORDERED injective embedding counts; nothing
// divides by the automorphism group. automorphism_count() exists so reports
// can translate to unordered copies for human consumption.
struct PatternGraph {
    int vcount = 0;
    std::vector<std::pair<int, int>> edge_list;  // i < j, sorted, unique
    std::vector<std::vector<int>> adj;
    std::string name;

    int ecount() const { return static_cast<int>(edge_list.size()); }

    static PatternGraph from_edges(int vcount, std::vector<std::pair<int, int>> edges,
                                   std::string name = "custom");

    static PatternGraph single_vertex();     // r = 1, no edges
    static PatternGraph edge();              // K2
    static PatternGraph path(int k);         // k vertices
    static PatternGraph cycle(int k);        // k >= 3
    static PatternGraph triangle() { return cycle(3); }
    static PatternGraph complete(int k);

    // "edge", "path:4", "cycle:5", "triangle", "complete:4", "vertex"
    static PatternGraph named(const std::string& spec);

    bool is_tree() const { return ecount() == vcount - 1; }
    bool adjacent(int a, int b) const;

    uint64_t automorphism_count() const;  // brute force, vcount <= 9

    // max over connected subgraphs with >= 2 vertices of |E(H)| / (|V(H)|-1).
    // Equals 1 exactly when the pattern is a tree.
    Rational zeta_exponent() const;
};

}  // namespace rcm
