#pragma once

#include <cstdint>
#include <vector>

#include "rcm/cumulant.hpp"
#include "rcm/kernel.hpp"
#include "rcm/pattern.hpp"
#include "rcm/rng.hpp"

namespace rcm {

// Direct simulation of the random connection model and ordered subgraph
// counting. Every replicate is a pure function of (master seed, replicate
// index): point counts and coordinates come from a per-replicate stream, and
// each potential edge flips a coin keyed by (replicate edge key, i, j), so
// the sampled graph does not depend on the order pairs are visited in.

struct HostGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists
    uint64_t edge_count() const;
};

struct PointSet {
    int dim = 0;
    std::vector<double> coords;  // n * dim, row-major
    int size() const { return dim == 0 ? 0 : static_cast<int>(coords.size()) / dim; }
};

PointSet sample_points(const IntensitySpec& intensity, double lambda, SplitMix64& rng);

// Samples edges among pts under the kernel. Uses a spatial hash grid when the
// kernel has a negligible range (boolean always, rayleigh via its cutoff);
// heavy-tailed and constant kernels scan all pairs. The grid and brute-force
// paths draw identical coins, so they produce identical graphs.
HostGraph sample_edges(const PointSet& pts, const KernelSpec& kernel, const Region& region,
                       double lambda, uint64_t edge_seed);

// All-pairs reference implementation (same keyed coins).
HostGraph sample_edges_bruteforce(const PointSet& pts, const KernelSpec& kernel,
                                  const Region& region, double lambda, uint64_t edge_seed);

// Number of injective vertex maps of the pattern into the host preserving all
// pattern edges; ordered convention, no automorphism division.
uint64_t count_ordered_embeddings(const PatternGraph& g, const HostGraph& host);

struct Replicate {
    uint64_t seed = 0;
    uint32_t points = 0;
    uint64_t count = 0;
};

struct SimulationPlan {
    PatternGraph pattern;
    KernelSpec kernel;
    IntensitySpec intensity;
    double lambda = 1.0;
    int replicates = 1;
    uint64_t seed = 1;
    // Refusal threshold on the projected worst-case embedding work,
    // mass^vertices per replicate summed over replicates. The backtracking
    // usually prunes far below this bound; the cap only exists to reject
    // plans that could not finish even in the lucky case.
    double cost_budget = 1e12;
};

Replicate run_one_replicate(const SimulationPlan& plan, int index);

// Runs every replicate as a pure function of (plan.seed, index). Throws
// SizeLimitError with the projected figure when the cost bound above is
// exceeded.
std::vector<Replicate> run_replicates(const SimulationPlan& plan,
                                      ExecMode mode = ExecMode::Parallel);

}  // namespace rcm
