// Serial vs OpenMP timing for the three hot kernels: diagram sums over the
// partition lattice, Monte Carlo integration, and simulation replicates.
// Not a test; build and run by hand:  ./bench/rcm_bench [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rcm/cumulant.hpp"
#include "rcm/integrate.hpp"
#include "rcm/simulate.hpp"
#include "rcm/weights.hpp"

using namespace rcm;
using Clock = std::chrono::steady_clock;

namespace {

double time_once(const std::function<void()>& body) {
    auto t0 = Clock::now();
    body();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double best_of(int repeats, const std::function<void()>& body) {
    double best = time_once(body);
    for (int i = 1; i < repeats; ++i) best = std::min(best, time_once(body));
    return best;
}

void row(const char* label, double serial_ms, double parallel_ms) {
    std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", label, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    if (repeats < 1) repeats = 1;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial path\n");
#endif
    std::printf("%-34s %13s %13s %9s\n", "kernel (best of repeats)", "serial", "parallel",
                "speedup");

    auto triangle = PatternGraph::triangle();
    auto kern = KernelSpec::boolean_kernel(0.2, ScalePair{1.0, Rational(0)}, Rational(0), 1.0);
    IntensitySpec spec{IntensityMode::ScaledIntensity, Region{true, {1.0, 1.0}}};

    {
        // exact rational diagram sum over the (3,3) connected non-flat lattice
        ConstantKernelExactWeight w{&triangle, Rational(15, 2), Rational(1, 4)};
        PartitionWeight<Rational> pw = w;
        volatile long long sink = 0;
        auto run = [&](ExecMode mode) {
            sink = sink + cumulant_via_connected<Rational>(3, 3, pw, mode).total.num();
        };
        row("diagram sum, (3,3) lattice",
            best_of(repeats, [&] { run(ExecMode::Serial); }),
            best_of(repeats, [&] { run(ExecMode::Parallel); }));
    }

    {
        // one large Monte Carlo integral (cyclic diagram, chained proposal)
        auto q = quotient_graph(GridPartition::singletons(1, 3), triangle);
        McOptions mc;
        mc.budget = 4000000;
        mc.seed = 99;
        volatile double sink = 0.0;
        row("mc integral, 4e6 samples",
            best_of(repeats,
                    [&] { sink = sink + mc_integrate_serial(q, kern, spec, 40.0, mc).est.value; }),
            best_of(repeats, [&] { sink = sink + mc_integrate(q, kern, spec, 40.0, mc).est.value; }));
    }

    {
        // simulation replicates: point sampling, edge sampling, counting
        SimulationPlan plan{triangle, kern, spec, 60.0, 400, 31337};
        volatile uint64_t sink = 0;
        auto run = [&](ExecMode mode) {
            for (const auto& rep : run_replicates(plan, mode)) sink = sink + rep.count;
        };
        row("400 replicates, lambda 60",
            best_of(repeats, [&] { run(ExecMode::Serial); }),
            best_of(repeats, [&] { run(ExecMode::Parallel); }));
    }

    return 0;
}
