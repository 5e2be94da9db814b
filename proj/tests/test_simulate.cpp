#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rcm/rng.hpp"
#include "rcm/simulate.hpp"

using namespace rcm;

namespace {

constexpr double kPi = 3.14159265358979323846;

// definitional embedding count: try every injective tuple, check every edge
uint64_t naive_embeddings(const PatternGraph& g, const HostGraph& host) {
    uint64_t count = 0;
    std::vector<int> phi(g.vcount, -1);
    std::vector<char> used(host.n, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == g.vcount) {
            for (auto [a, b] : g.edge_list) {
                const auto& na = host.adj[phi[a]];
                if (!std::binary_search(na.begin(), na.end(), phi[b])) return;
            }
            ++count;
            return;
        }
        for (int u = 0; u < host.n; ++u) {
            if (used[u]) continue;
            used[u] = 1;
            phi[v] = u;
            rec(v + 1);
            used[u] = 0;
        }
    };
    rec(0);
    return count;
}

HostGraph random_host(int n, double p, uint64_t seed) {
    HostGraph h;
    h.n = n;
    h.adj.assign(n, {});
    SplitMix64 rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) {
                h.adj[i].push_back(j);
                h.adj[j].push_back(i);
            }
    return h;  // neighbor lists come out sorted by construction
}

}  // namespace

TEST_CASE("poisson sampler is deterministic and well calibrated") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 20; ++i) CHECK(poisson_sample(7.5, a) == poisson_sample(7.5, b));

    for (double mean : {2.5, 29.0, 200.0}) {
        SplitMix64 rng(777);
        int n = 20000;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = static_cast<double>(poisson_sample(mean, rng));
            sum += x;
            sumsq += x * x;
        }
        double m = sum / n;
        double v = (sumsq - n * m * m) / (n - 1);
        double mean_se = std::sqrt(mean / n);
        CAPTURE(mean);
        CHECK(std::fabs(m - mean) <= 5.0 * mean_se);
        // Var(s^2) ~ (mu + 3 mu^2 - mu^2) / n for the Poisson
        double var_se = std::sqrt((mean + 2.0 * mean * mean) / n);
        CHECK(std::fabs(v - mean) <= 6.0 * var_se);
    }
}

TEST_CASE("sampled points live in the stated region with Poisson counts") {
    IntensitySpec spec{IntensityMode::ScaledIntensity, Region{true, {2.0, 3.0}}};
    double lambda = 12.0;  // mass 72
    SplitMix64 rng(5);
    double total = 0.0;
    int reps = 3000;
    for (int i = 0; i < reps; ++i) {
        auto pts = sample_points(spec, lambda, rng);
        CHECK(pts.dim == 2);
        total += pts.size();
        for (int p = 0; p < pts.size(); ++p) {
            CHECK(pts.coords[2 * p] >= 0.0);
            CHECK(pts.coords[2 * p] < 2.0);
            CHECK(pts.coords[2 * p + 1] >= 0.0);
            CHECK(pts.coords[2 * p + 1] < 3.0);
        }
    }
    double mean = total / reps;
    CHECK(std::fabs(mean - 72.0) <= 5.0 * std::sqrt(72.0 / reps));

    IntensitySpec grow{IntensityMode::GrowingWindow, Region{true, {1.0, 1.0}}};
    SplitMix64 rng2(6);
    auto pts = sample_points(grow, 49.0, rng2);
    for (int p = 0; p < pts.size(); ++p) {
        CHECK(pts.coords[2 * p] < 7.0);  // sides scaled by sqrt(49)
    }
}

TEST_CASE("grid and brute-force edge sampling produce identical graphs") {
    Region region{true, {4.0, 4.0}};
    IntensitySpec spec{IntensityMode::ScaledIntensity, region};
    auto boolk = KernelSpec::boolean_kernel(0.25);
    auto ray = KernelSpec::rayleigh(8.0);
    auto cons = KernelSpec::constant(0.2);

    int grid_exercised = 0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        SplitMix64 rng(seed);
        auto pts = sample_points(spec, 10.0, rng);  // mass 160
        if (pts.size() >= 64) ++grid_exercised;
        for (const auto& kern : {boolk, ray, cons}) {
            auto fast = sample_edges(pts, kern, region, 10.0, mix_key(seed, 0xe));
            auto slow = sample_edges_bruteforce(pts, kern, region, 10.0, mix_key(seed, 0xe));
            REQUIRE(fast.n == slow.n);
            CHECK(fast.adj == slow.adj);
        }
    }
    CHECK(grid_exercised == 100);  // mass 160 makes n < 64 astronomically rare
}

TEST_CASE("edge coins depend on the pair, not the visit order") {
    Region region{true, {4.0, 4.0}};
    IntensitySpec spec{IntensityMode::ScaledIntensity, region};
    SplitMix64 rng(9);
    auto pts = sample_points(spec, 8.0, rng);
    auto k1 = KernelSpec::rayleigh(2.0);
    auto g1 = sample_edges(pts, k1, region, 8.0, 1234);
    auto g2 = sample_edges(pts, k1, region, 8.0, 1234);
    CHECK(g1.adj == g2.adj);
    auto g3 = sample_edges(pts, k1, region, 8.0, 1235);
    CHECK(g1.adj != g3.adj);  // overwhelmingly likely with ~130 points

    // with c = 1 the boolean kernel is a deterministic geometric graph
    auto kb = KernelSpec::boolean_kernel(0.3);
    CHECK(sample_edges(pts, kb, region, 8.0, 1).adj == sample_edges(pts, kb, region, 8.0, 2).adj);
}

TEST_CASE("ordered embedding counts match the definitional oracle") {
    std::vector<PatternGraph> pats = {
        PatternGraph::single_vertex(), PatternGraph::edge(),     PatternGraph::path(3),
        PatternGraph::triangle(),      PatternGraph::cycle(4),   PatternGraph::path(4),
        PatternGraph::complete(4),
        PatternGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}, "star4")};
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        auto host = random_host(3 + static_cast<int>(seed % 6), 0.4 + 0.04 * (seed % 5), seed);
        for (const auto& g : pats) {
            CAPTURE(seed);
            CAPTURE(g.name);
            uint64_t got = count_ordered_embeddings(g, host);
            CHECK(got == naive_embeddings(g, host));
            CHECK(got % static_cast<uint64_t>(g.automorphism_count()) == 0);
        }
    }
}

TEST_CASE("embedding edge cases") {
    HostGraph empty;
    empty.n = 0;
    CHECK(count_ordered_embeddings(PatternGraph::single_vertex(), empty) == 0);
    CHECK(count_ordered_embeddings(PatternGraph::triangle(), empty) == 0);

    auto host = random_host(7, 0.5, 99);
    CHECK(count_ordered_embeddings(PatternGraph::single_vertex(), host) == 7);
    CHECK(count_ordered_embeddings(PatternGraph::edge(), host) == 2 * host.edge_count());

    // host smaller than the pattern
    auto tiny = random_host(2, 1.0, 1);
    CHECK(count_ordered_embeddings(PatternGraph::triangle(), tiny) == 0);
}

TEST_CASE("replicates are pure functions of (seed, index)") {
    SimulationPlan plan{PatternGraph::edge(), KernelSpec::boolean_kernel(0.2),
                        IntensitySpec{IntensityMode::ScaledIntensity, Region{true, {1.0, 1.0}}},
                        30.0, 16, 2024};
    auto a = run_replicates(plan, ExecMode::Serial);
    auto b = run_replicates(plan, ExecMode::Serial);
    REQUIRE(a.size() == 16);
    for (int i = 0; i < 16; ++i) {
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].points == b[i].points);
        CHECK(a[i].count == b[i].count);
        auto one = run_one_replicate(plan, i);
        CHECK(one.count == a[i].count);
        CHECK(one.points == a[i].points);
    }
    // different master seed changes the draw
    auto plan2 = plan;
    plan2.seed = 2025;
    auto c = run_replicates(plan2, ExecMode::Serial);
    bool any_diff = false;
    for (int i = 0; i < 16; ++i) any_diff |= c[i].count != a[i].count;
    CHECK(any_diff);
}

TEST_CASE("simulated edge counts center on the diagram value") {
    // E[N_edge] = lambda^2 pi R^2 = 78.54 at lambda=50, R=0.1 on the unit torus
    SimulationPlan plan{PatternGraph::edge(), KernelSpec::boolean_kernel(0.1),
                        IntensitySpec{IntensityMode::ScaledIntensity, Region{true, {1.0, 1.0}}},
                        50.0, 1500, 31337};
    auto reps = run_replicates(plan, ExecMode::Serial);
    double sum = 0.0, sumsq = 0.0;
    for (const auto& r : reps) {
        sum += static_cast<double>(r.count);
        sumsq += static_cast<double>(r.count) * static_cast<double>(r.count);
    }
    double n = static_cast<double>(reps.size());
    double mean = sum / n;
    double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1.0));
    double want = 2500.0 * kPi * 0.01;
    CHECK(std::fabs(mean - want) <= 5.0 * sd / std::sqrt(n));
}

TEST_CASE("plans over the cost budget are refused up front") {
    SimulationPlan plan{PatternGraph::edge(), KernelSpec::boolean_kernel(0.1),
                        IntensitySpec{IntensityMode::ScaledIntensity, Region{true, {1.0, 1.0}}},
                        50.0, 100, 7};
    plan.cost_budget = 10.0;  // projected work is 50^2 * 100 = 2.5e5
    CHECK_THROWS_AS(run_replicates(plan, ExecMode::Serial), SizeLimitError);
    try {
        run_replicates(plan, ExecMode::Serial);
    } catch (const SizeLimitError& e) {
        CHECK(std::string(e.what()).find("projected") != std::string::npos);
        CHECK(std::string(e.what()).find("250000") != std::string::npos);
    }
    // the bound is on run_replicates; a single replicate stays uncapped
    CHECK_NOTHROW(run_one_replicate(plan, 0));
    plan.cost_budget = 2.5e5;  // exactly at the bound is allowed
    CHECK(run_replicates(plan, ExecMode::Serial).size() == 100);
}
