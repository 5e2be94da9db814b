#include "rcm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rcm/partition.hpp"

namespace rcm {

uint64_t HostGraph::edge_count() const {
    uint64_t deg = 0;
    for (const auto& a : adj) deg += a.size();
    return deg / 2;
}

PointSet sample_points(const IntensitySpec& intensity, double lambda, SplitMix64& rng) {
    Region region = intensity.region_at(lambda);
    uint32_t n = poisson_sample(intensity.mass(lambda), rng);
    PointSet pts;
    pts.dim = region.dim();
    pts.coords.resize(static_cast<size_t>(n) * pts.dim);
    for (uint32_t i = 0; i < n; ++i)
        for (int k = 0; k < pts.dim; ++k)
            pts.coords[static_cast<size_t>(i) * pts.dim + k] = rng.uniform() * region.sides[k];
    return pts;
}

namespace {

inline uint64_t pair_key(int i, int j) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) |
           static_cast<uint32_t>(j);
}

// Visits i<j once; the coin is keyed, so visit order is irrelevant.
inline void try_edge(int i, int j, const PointSet& pts, const KernelSpec& kernel,
                     const Region& region, double lambda, uint64_t edge_seed,
                     std::vector<std::vector<int>>& adj) {
    double dist = region.distance(&pts.coords[static_cast<size_t>(i) * pts.dim],
                                  &pts.coords[static_cast<size_t>(j) * pts.dim]);
    double p = kernel.connection_probability(dist, lambda);
    if (p <= 0.0) return;
    if (keyed_uniform(edge_seed, pair_key(i, j)) < p) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
}

}  // namespace

HostGraph sample_edges_bruteforce(const PointSet& pts, const KernelSpec& kernel,
                                  const Region& region, double lambda, uint64_t edge_seed) {
    HostGraph h;
    h.n = pts.size();
    h.adj.assign(h.n, {});
    for (int i = 0; i < h.n; ++i)
        for (int j = i + 1; j < h.n; ++j)
            try_edge(i, j, pts, kernel, region, lambda, edge_seed, h.adj);
    for (auto& a : h.adj) std::sort(a.begin(), a.end());
    return h;
}

HostGraph sample_edges(const PointSet& pts, const KernelSpec& kernel, const Region& region,
                       double lambda, uint64_t edge_seed) {
    auto cutoff = kernel.negligible_beyond(lambda, 1e-14);
    int n = pts.size();
    // A grid pays off when the interaction range is well below the region
    // size; otherwise fall back to the all-pairs scan.
    if (!cutoff || *cutoff <= 0.0 || *cutoff >= region.min_side() / 3.0 || n < 64)
        return sample_edges_bruteforce(pts, kernel, region, lambda, edge_seed);

    int dim = pts.dim;
    double cell = *cutoff;
    std::vector<int> cells_per_dim(dim);
    for (int k = 0; k < dim; ++k)
        cells_per_dim[k] = std::max(1, static_cast<int>(std::floor(region.sides[k] / cell)));
    auto cell_of = [&](int i) {
        long long idx = 0;
        for (int k = 0; k < dim; ++k) {
            double x = pts.coords[static_cast<size_t>(i) * dim + k];
            int c = std::min(cells_per_dim[k] - 1,
                             static_cast<int>(x / region.sides[k] * cells_per_dim[k]));
            idx = idx * cells_per_dim[k] + c;
        }
        return idx;
    };
    long long ncells = 1;
    for (int k = 0; k < dim; ++k) ncells *= cells_per_dim[k];
    std::vector<std::vector<int>> bucket(ncells);
    for (int i = 0; i < n; ++i) bucket[cell_of(i)].push_back(i);

    HostGraph h;
    h.n = n;
    h.adj.assign(n, {});

    // Enumerate neighbor cell offsets (-1, 0, 1) per axis, wrapped on tori.
    std::vector<std::vector<int>> offsets;
    std::vector<int> cur(dim, -1);
    for (;;) {
        offsets.push_back(cur);
        int k = dim - 1;
        while (k >= 0 && cur[k] == 1) cur[k--] = -1;
        if (k < 0) break;
        cur[k]++;
    }

    std::vector<int> coord(dim), other(dim);
    for (long long ci = 0; ci < ncells; ++ci) {
        if (bucket[ci].empty()) continue;
        long long rest = ci;
        for (int k = dim - 1; k >= 0; --k) {
            coord[k] = static_cast<int>(rest % cells_per_dim[k]);
            rest /= cells_per_dim[k];
        }
        for (const auto& off : offsets) {
            bool ok = true;
            for (int k = 0; k < dim; ++k) {
                int c = coord[k] + off[k];
                if (region.torus) {
                    if (c < 0) c += cells_per_dim[k];
                    if (c >= cells_per_dim[k]) c -= cells_per_dim[k];
                    // A dimension with fewer than 3 cells sees duplicates
                    // among its wrapped neighbors; dedupe below via cj >= ci.
                } else if (c < 0 || c >= cells_per_dim[k]) {
                    ok = false;
                    break;
                }
                other[k] = c;
            }
            if (!ok) continue;
            long long cj = 0;
            for (int k = 0; k < dim; ++k) cj = cj * cells_per_dim[k] + other[k];
            if (cj < ci) continue;  // each unordered cell pair once
            for (int i : bucket[ci]) {
                for (int j : bucket[cj]) {
                    if (cj == ci ? j <= i : false) continue;
                    int a = i, b = j;
                    if (a > b) std::swap(a, b);
                    try_edge(a, b, pts, kernel, region, lambda, edge_seed, h.adj);
                }
            }
        }
    }
    // Wrapped duplicate cell pairs (possible when a torus axis has 1 or 2
    // cells) would double-insert; dedupe adjacency.
    for (auto& a : h.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return h;
}

uint64_t count_ordered_embeddings(const PatternGraph& g, const HostGraph& host) {
    if (host.n < g.vcount) return 0;
    // Map pattern vertices in a connectivity-respecting order rooted at the
    // highest-degree vertex, so every vertex after the first has at least one
    // mapped neighbor to anchor its candidate list.
    int r = g.vcount;
    std::vector<int> order;
    std::vector<char> placed(r, 0);
    int root = 0;
    for (int v = 1; v < r; ++v)
        if (g.adj[v].size() > g.adj[root].size()) root = v;
    order.push_back(root);
    placed[root] = 1;
    while (static_cast<int>(order.size()) < r) {
        int best = -1, best_links = -1;
        for (int v = 0; v < r; ++v) {
            if (placed[v]) continue;
            int links = 0;
            for (int w : g.adj[v])
                if (placed[w]) ++links;
            if (links > best_links ||
                (links == best_links && best >= 0 && g.adj[v].size() > g.adj[best].size())) {
                best = v;
                best_links = links;
            }
        }
        order.push_back(best);
        placed[best] = 1;
    }
    std::vector<int> pos(r);  // pattern vertex -> position in order
    for (int i = 0; i < r; ++i) pos[order[i]] = i;

    std::vector<int> map(r, -1);
    std::vector<char> used(host.n, 0);
    uint64_t count = 0;

    auto adjacent_host = [&](int a, int b) {
        const auto& la = host.adj[a].size() <= host.adj[b].size() ? host.adj[a] : host.adj[b];
        int target = host.adj[a].size() <= host.adj[b].size() ? b : a;
        return std::binary_search(la.begin(), la.end(), target);
    };

    std::function<void(int)> rec = [&](int depth) {
        if (depth == r) {
            ++count;
            return;
        }
        int v = order[depth];
        // anchor: mapped neighbor with the shortest host adjacency
        int anchor = -1;
        for (int w : g.adj[v]) {
            if (pos[w] >= depth) continue;
            if (anchor < 0 ||
                host.adj[map[w]].size() < host.adj[map[anchor]].size())
                anchor = w;
        }
        auto try_host = [&](int hv) {
            if (used[hv]) return;
            for (int w : g.adj[v]) {
                if (pos[w] >= depth) continue;
                if (!adjacent_host(hv, map[w])) return;
            }
            used[hv] = 1;
            map[v] = hv;
            rec(depth + 1);
            used[hv] = 0;
            map[v] = -1;
        };
        if (anchor < 0) {
            for (int hv = 0; hv < host.n; ++hv) try_host(hv);
        } else {
            for (int hv : host.adj[map[anchor]]) try_host(hv);
        }
    };
    rec(0);
    return count;
}

Replicate run_one_replicate(const SimulationPlan& plan, int index) {
    uint64_t seed = mix_key(plan.seed, static_cast<uint64_t>(index));
    SplitMix64 rng(seed);
    PointSet pts = sample_points(plan.intensity, plan.lambda, rng);
    Region region = plan.intensity.region_at(plan.lambda);
    uint64_t edge_seed = mix_key(seed, 0xedULL);
    HostGraph host = sample_edges(pts, plan.kernel, region, plan.lambda, edge_seed);
    Replicate rep;
    rep.seed = seed;
    rep.points = static_cast<uint32_t>(pts.size());
    rep.count = count_ordered_embeddings(plan.pattern, host);
    return rep;
}

std::vector<Replicate> run_replicates(const SimulationPlan& plan, ExecMode mode) {
    double projected = std::pow(plan.intensity.mass(plan.lambda), plan.pattern.vcount) *
                       plan.replicates;
    if (!(projected <= plan.cost_budget)) {
        std::ostringstream msg;
        msg << "projected embedding work " << projected << " (mass^" << plan.pattern.vcount
            << " x " << plan.replicates << " replicates) exceeds the cost budget "
            << plan.cost_budget;
        throw SizeLimitError(msg.str());
    }
    std::vector<Replicate> out(plan.replicates);
    if (mode == ExecMode::Serial) {
        for (int i = 0; i < plan.replicates; ++i) out[i] = run_one_replicate(plan, i);
        return out;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < plan.replicates; ++i) out[i] = run_one_replicate(plan, i);
    return out;
}

}  // namespace rcm
