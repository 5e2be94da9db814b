#include "rcm/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rcm {

namespace {

void require_connected(const PatternGraph& g) {
    if (g.vcount <= 0) throw std::invalid_argument("pattern graph needs at least one vertex");
    std::vector<int> seen(g.vcount, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw std::invalid_argument("pattern graph must be connected");
}

}  // namespace

PatternGraph PatternGraph::from_edges(int vcount, std::vector<std::pair<int, int>> edges,
                                      std::string name) {
    PatternGraph g;
    g.vcount = vcount;
    g.name = std::move(name);
    for (auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("pattern graph has a self-loop");
        if (a < 0 || b < 0 || a >= vcount || b >= vcount)
            throw std::invalid_argument("pattern edge out of range");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("pattern graph has a duplicate edge");
    g.edge_list = std::move(edges);
    g.adj.assign(vcount, {});
    for (auto [a, b] : g.edge_list) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    require_connected(g);
    return g;
}

PatternGraph PatternGraph::single_vertex() { return from_edges(1, {}, "vertex"); }

PatternGraph PatternGraph::edge() { return from_edges(2, {{0, 1}}, "edge"); }

PatternGraph PatternGraph::path(int k) {
    if (k < 1) throw std::invalid_argument("path needs at least one vertex");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < k; ++i) e.push_back({i, i + 1});
    return from_edges(k, std::move(e), "path:" + std::to_string(k));
}

PatternGraph PatternGraph::cycle(int k) {
    if (k < 3) throw std::invalid_argument("cycle needs at least three vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
    auto g = from_edges(k, std::move(e), "cycle:" + std::to_string(k));
    if (k == 3) g.name = "triangle";
    return g;
}

PatternGraph PatternGraph::complete(int k) {
    if (k < 1) throw std::invalid_argument("complete graph needs at least one vertex");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) e.push_back({i, j});
    return from_edges(k, std::move(e), "complete:" + std::to_string(k));
}

PatternGraph PatternGraph::named(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    int arg = 0;
    if (colon != std::string::npos) arg = std::stoi(spec.substr(colon + 1));
    if (head == "vertex") return single_vertex();
    if (head == "edge") return edge();
    if (head == "triangle") return triangle();
    if (head == "path") return path(arg);
    if (head == "cycle") return cycle(arg);
    if (head == "complete") return complete(arg);
    throw std::invalid_argument("unknown pattern: " + spec);
}

bool PatternGraph::adjacent(int a, int b) const {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
}

uint64_t PatternGraph::automorphism_count() const {
    if (vcount > 9) throw std::invalid_argument("automorphism_count caps at 9 vertices");
    std::vector<int> perm(vcount);
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t count = 0;
    do {
        bool ok = true;
        for (auto [a, b] : edge_list)
            if (!adjacent(perm[a], perm[b])) {
                ok = false;
                break;
            }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

Rational PatternGraph::zeta_exponent() const {
    if (vcount < 2) throw std::invalid_argument("zeta_exponent needs at least two vertices");
    // The maximum is attained on an induced connected subgraph, so scanning
    // vertex subsets suffices (vcount is small by construction).
    Rational best(0);
    for (uint32_t mask = 1; mask < (1u << vcount); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        int edges = 0;
        for (auto [a, b] : edge_list)
            if ((mask >> a & 1) && (mask >> b & 1)) ++edges;
        if (edges == 0) continue;
        // connectivity of the induced subgraph
        int start = __builtin_ctz(mask);
        uint32_t seen = 1u << start;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if ((mask >> w & 1) && !(seen >> w & 1)) {
                    seen |= 1u << w;
                    stack.push_back(w);
                }
        }
        if (seen != mask) continue;
        Rational ratio(edges, __builtin_popcount(mask) - 1);
        if (ratio > best) best = ratio;
    }
    return best;
}

}  // namespace rcm
