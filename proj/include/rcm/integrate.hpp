#pragma once

#include <cstdint>
#include <optional>

#include "rcm/est.hpp"
#include "rcm/kernel.hpp"
#include "rcm/quotient.hpp"

namespace rcm {

// Evaluates the diagram integral of a quotient graph q against the kernel and
// intensity: integral over region^V of prod_{edges} c_lambda*H(|x_i - x_j|)
// with each vertex carrying the intensity measure. Closed forms are used when
// available, otherwise plain Monte Carlo with a deterministic keyed stream.
//
// Routing:
//   - any self-loop: the diagram vanishes identically (diagonal is null),
//   - constant kernel: mass^V * (c_lambda p)^E exactly, any graph shape,
//   - forest on a torus with a closed-form edge integral: tree factorization
//     intensity^V * mu^components * (c_lambda I_H)^E,
//   - everything else: Monte Carlo (std_error from the sample variance).
//
// For boolean kernels the Monte Carlo sampler walks a BFS spanning forest:
// component roots are placed uniformly, every other vertex uniformly inside
// the connection ball of its parent, and only the edges left over (and the
// box boundary, if any) reject samples. This is an exact change of variables,
// not an approximation, and it keeps small radii estimable where uniform
// placement would miss the event entirely. On a torus it needs 2R <= min
// side; otherwise, and for all unbounded kernels, vertices are placed
// uniformly on the region.

struct McOptions {
    uint64_t budget = 100000;
    uint64_t seed = 1;
    bool force_mc = false;  // bypass exact routes; used by consistency tests
};

enum class IntegralMethod { Vanishing, ExactConstant, ExactTree, MonteCarlo };

struct IntegralEstimate {
    Est est;
    IntegralMethod method = IntegralMethod::MonteCarlo;
};

// Edge integral int H(|y|) mu(dy) over the torus, without the c_lambda
// factor. Boolean: v_d R^d (needs 2R <= min side). Rayleigh: the wrapped
// metric makes prod_i sqrt(pi/beta) erf(sqrt(beta) L_i / 2) exact. Constant:
// p * mu(T). Power law and box regions have no closed form here.
std::optional<double> edge_integral_closed_form(const KernelSpec& kernel, const Region& region,
                                                double lambda);

double unit_ball_volume(int dim);

IntegralEstimate integrate_diagram(const QuotientGraph& q, const KernelSpec& kernel,
                                   const IntensitySpec& intensity, double lambda,
                                   const McOptions& mc);

// Monte Carlo path, callable directly. Deterministic for a given (seed,
// budget) independent of worker count: samples are keyed by global index and
// reduced in fixed-size chunk order.
IntegralEstimate mc_integrate(const QuotientGraph& q, const KernelSpec& kernel,
                              const IntensitySpec& intensity, double lambda,
                              const McOptions& mc);

// Serial reference for the Monte Carlo kernel (plain running sums in sample
// order). Same estimator, same draws; only the summation grouping differs.
IntegralEstimate mc_integrate_serial(const QuotientGraph& q, const KernelSpec& kernel,
                                     const IntensitySpec& intensity, double lambda,
                                     const McOptions& mc);

}  // namespace rcm
