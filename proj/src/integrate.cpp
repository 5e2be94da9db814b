#include "rcm/integrate.hpp"

#include <cmath>
#include <vector>

#include "rcm/rng.hpp"

namespace rcm {

double unit_ball_volume(int dim) {
    return std::pow(3.14159265358979323846, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

std::optional<double> edge_integral_closed_form(const KernelSpec& kernel, const Region& region,
                                                double lambda) {
    if (!region.torus) return std::nullopt;
    switch (kernel.family) {
        case KernelFamily::Boolean: {
            double R = kernel.radius_at(lambda);
            if (2.0 * R > region.min_side()) return std::nullopt;
            return unit_ball_volume(region.dim()) * std::pow(R, region.dim());
        }
        case KernelFamily::Rayleigh: {
            double beta = kernel.param;
            double v = 1.0;
            for (double L : region.sides)
                v *= std::sqrt(3.14159265358979323846 / beta) *
                     std::erf(std::sqrt(beta) * L / 2.0);
            return v;
        }
        case KernelFamily::Constant:
            return kernel.param * region.measure();
        case KernelFamily::PowerLaw:
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

IntegralEstimate exact_constant(const QuotientGraph& q, const KernelSpec& kernel,
                                const IntensitySpec& intensity, double lambda) {
    double mass = intensity.mass(lambda);
    double cp = kernel.scale.at(lambda) * kernel.param;
    double v = std::pow(mass, q.vcount) * std::pow(cp, q.ecount());
    return {Est::exact(v), IntegralMethod::ExactConstant};
}

IntegralEstimate exact_tree(const QuotientGraph& q, double edge_integral,
                            const KernelSpec& kernel, const IntensitySpec& intensity,
                            double lambda) {
    Region t = intensity.region_at(lambda);
    double rho = intensity.point_intensity(lambda);
    double c = kernel.scale.at(lambda);
    double v = std::pow(rho, q.vcount) * std::pow(t.measure(), q.component_count()) *
               std::pow(c * edge_integral, q.ecount());
    return {Est::exact(v), IntegralMethod::ExactTree};
}

struct McAccum {
    double sum = 0.0;
    double sumsq = 0.0;
};

// Importance plan for kernels with bounded support. Vertices are visited
// along a BFS spanning forest: roots land uniformly on the region, every
// other vertex lands uniformly in the connection ball of its parent, so the
// hard tree constraints are satisfied by construction and only the edges
// outside the forest can reject a sample. That keeps the acceptance rate
// bounded away from zero as the radius shrinks, where uniform placement
// would need budgets growing like R^(-d(V-1)).
struct ChainPlan {
    bool usable = false;
    double radius = 0.0;
    int root_count = 0;
    std::vector<int> order;    // visit order: parents always before children
    std::vector<int> parent;   // -1 on roots
    std::vector<std::pair<int, int>> cross_edges;  // edges off the forest
};

ChainPlan make_chain_plan(const QuotientGraph& q, const KernelSpec& kernel, const Region& region,
                          double lambda) {
    ChainPlan plan;
    if (kernel.family != KernelFamily::Boolean) return plan;
    double radius = kernel.radius_at(lambda);
    if (!(radius > 0.0)) return plan;
    // on a torus an offset inside the ball must equal the wrapped distance
    if (region.torus && 2.0 * radius > region.min_side()) return plan;

    int n = q.vcount;
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : q.edge_list) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    plan.parent.assign(n, -1);
    std::vector<char> seen(n, 0);
    std::vector<int> queue;
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        ++plan.root_count;
        seen[start] = 1;
        queue.assign(1, start);
        plan.order.push_back(start);
        for (size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int u : adj[v]) {
                if (seen[u]) continue;
                seen[u] = 1;
                plan.parent[u] = v;
                plan.order.push_back(u);
                queue.push_back(u);
            }
        }
    }
    for (auto [a, b] : q.edge_list)
        if (plan.parent[a] != b && plan.parent[b] != a) plan.cross_edges.push_back({a, b});
    plan.radius = radius;
    plan.usable = true;
    return plan;
}

McAccum mc_chunk(const QuotientGraph& q, const KernelSpec& kernel, const Region& region,
                 double lambda, uint64_t seed, uint64_t begin, uint64_t end) {
    int dim = region.dim();
    std::vector<double> pts(static_cast<size_t>(q.vcount) * dim);
    McAccum acc;
    for (uint64_t s = begin; s < end; ++s) {
        SplitMix64 rng(mix_key(seed, s));
        for (int v = 0; v < q.vcount; ++v)
            for (int k = 0; k < dim; ++k) pts[v * dim + k] = rng.uniform() * region.sides[k];
        double prod = 1.0;
        for (size_t e = 0; e < q.edge_list.size(); ++e) {
            auto [a, b] = q.edge_list[e];
            double dist = region.distance(&pts[a * dim], &pts[b * dim]);
            prod *= kernel.connection_probability(dist, lambda);
            if (prod == 0.0) break;
        }
        acc.sum += prod;
        acc.sumsq += prod * prod;
    }
    return acc;
}

McAccum mc_chunk_chained(const QuotientGraph& q, const ChainPlan& plan, const KernelSpec& kernel,
                         const Region& region, double lambda, uint64_t seed, uint64_t begin,
                         uint64_t end) {
    int dim = region.dim();
    double radius = plan.radius;
    std::vector<double> pts(static_cast<size_t>(q.vcount) * dim);
    std::vector<double> off(dim);
    McAccum acc;
    for (uint64_t s = begin; s < end; ++s) {
        SplitMix64 rng(mix_key(seed, s));
        bool inside = true;
        for (int v : plan.order) {
            int p = plan.parent[v];
            if (p < 0) {
                for (int k = 0; k < dim; ++k) pts[v * dim + k] = rng.uniform() * region.sides[k];
                continue;
            }
            // uniform point of the radius-ball, by rejection from its cube
            for (;;) {
                double r2 = 0.0;
                for (int k = 0; k < dim; ++k) {
                    off[k] = (2.0 * rng.uniform() - 1.0) * radius;
                    r2 += off[k] * off[k];
                }
                if (r2 <= radius * radius) break;
            }
            for (int k = 0; k < dim; ++k) {
                double x = pts[p * dim + k] + off[k];
                double side = region.sides[k];
                if (region.torus) {
                    x -= side * std::floor(x / side);
                } else if (x < 0.0 || x >= side) {
                    inside = false;  // left the box: outside the domain
                }
                pts[v * dim + k] = x;
            }
        }
        double prod = inside ? 1.0 : 0.0;
        if (inside) {
            for (auto [a, b] : plan.cross_edges) {
                double dist = region.distance(&pts[a * dim], &pts[b * dim]);
                prod *= kernel.connection_probability(dist, lambda);
                if (prod == 0.0) break;
            }
        }
        acc.sum += prod;
        acc.sumsq += prod * prod;
    }
    return acc;
}

constexpr uint64_t kMcChunk = 8192;

}  // namespace

namespace {

uint64_t checked_budget(const McOptions& mc) {
    if (mc.budget < 1000) throw std::invalid_argument("monte carlo budget must be at least 1000");
    return mc.budget;
}

// Normalizing constant turning the per-sample average into the integral.
// Uniform placement: every vertex carries density 1/measure, so the factor is
// mass^V. Chained placement: roots carry 1/measure, each forest edge carries
// density 1/vol(ball) and a kernel weight of c * h = c, hence c * vol(ball)
// per chained vertex.
double mc_scale(const QuotientGraph& q, const ChainPlan& plan, const KernelSpec& kernel,
                const IntensitySpec& intensity, double lambda) {
    if (!plan.usable) return std::pow(intensity.mass(lambda), q.vcount);
    Region region = intensity.region_at(lambda);
    int dim = region.dim();
    double ball = unit_ball_volume(dim) * std::pow(plan.radius, dim);
    double c = kernel.scale.at(lambda);
    return std::pow(intensity.point_intensity(lambda), q.vcount) *
           std::pow(region.measure(), plan.root_count) *
           std::pow(c * ball, q.vcount - plan.root_count);
}

McAccum run_chunk(const QuotientGraph& q, const ChainPlan& plan, const KernelSpec& kernel,
                  const Region& region, double lambda, uint64_t seed, uint64_t begin,
                  uint64_t end) {
    if (plan.usable) return mc_chunk_chained(q, plan, kernel, region, lambda, seed, begin, end);
    return mc_chunk(q, kernel, region, lambda, seed, begin, end);
}

}  // namespace

IntegralEstimate mc_integrate(const QuotientGraph& q, const KernelSpec& kernel,
                              const IntensitySpec& intensity, double lambda,
                              const McOptions& mc) {
    Region region = intensity.region_at(lambda);
    uint64_t budget = checked_budget(mc);
    ChainPlan plan = make_chain_plan(q, kernel, region, lambda);
    uint64_t nchunks = (budget + kMcChunk - 1) / kMcChunk;
    std::vector<McAccum> partial(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
        uint64_t begin = static_cast<uint64_t>(c) * kMcChunk;
        uint64_t end = begin + kMcChunk < budget ? begin + kMcChunk : budget;
        partial[c] = run_chunk(q, plan, kernel, region, lambda, mc.seed, begin, end);
    }
    McAccum total;
    for (const auto& p : partial) {
        total.sum += p.sum;
        total.sumsq += p.sumsq;
    }
    double n = static_cast<double>(budget);
    double mean = total.sum / n;
    double var_mean = 0.0;
    if (budget > 1) {
        double sample_var = (total.sumsq - n * mean * mean) / (n - 1.0);
        if (sample_var < 0.0) sample_var = 0.0;
        var_mean = sample_var / n;
    }
    double scale = mc_scale(q, plan, kernel, intensity, lambda);
    return {Est{mean * scale, var_mean * scale * scale}, IntegralMethod::MonteCarlo};
}

IntegralEstimate mc_integrate_serial(const QuotientGraph& q, const KernelSpec& kernel,
                                     const IntensitySpec& intensity, double lambda,
                                     const McOptions& mc) {
    Region region = intensity.region_at(lambda);
    uint64_t budget = checked_budget(mc);
    ChainPlan plan = make_chain_plan(q, kernel, region, lambda);
    McAccum total = run_chunk(q, plan, kernel, region, lambda, mc.seed, 0, budget);
    double n = static_cast<double>(budget);
    double mean = total.sum / n;
    double var_mean = 0.0;
    if (budget > 1) {
        double sample_var = (total.sumsq - n * mean * mean) / (n - 1.0);
        if (sample_var < 0.0) sample_var = 0.0;
        var_mean = sample_var / n;
    }
    double scale = mc_scale(q, plan, kernel, intensity, lambda);
    return {Est{mean * scale, var_mean * scale * scale}, IntegralMethod::MonteCarlo};
}

IntegralEstimate integrate_diagram(const QuotientGraph& q, const KernelSpec& kernel,
                                   const IntensitySpec& intensity, double lambda,
                                   const McOptions& mc) {
    if (!(intensity.mass(lambda) > 0.0))
        throw std::invalid_argument("intensity measure must have positive mass");
    if (q.vanishing()) return {Est::exact(0.0), IntegralMethod::Vanishing};
    if (!mc.force_mc) {
        if (kernel.family == KernelFamily::Constant)
            return exact_constant(q, kernel, intensity, lambda);
        if (q.is_forest()) {
            Region t = intensity.region_at(lambda);
            if (auto ih = edge_integral_closed_form(kernel, t, lambda))
                return exact_tree(q, *ih, kernel, intensity, lambda);
        }
    }
    return mc_integrate(q, kernel, intensity, lambda, mc);
}

}  // namespace rcm
