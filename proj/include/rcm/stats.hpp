#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rcm/kernel.hpp"
#include "rcm/pattern.hpp"
#include "rcm/rational.hpp"

namespace rcm {

// Sample-side statistics: k-statistics (unbiased cumulant estimators, orders
// 1..4 by design -- higher orders need prohibitive replicate counts to be
// useful), Kolmogorov-Smirnov distance to the standard normal, log-log slope
// fits, and the Berry-Esseen-flavoured rate predictions.

struct KStatistics {
    std::array<double, 4> k{};         // k1..k4
    std::array<double, 4> std_error{}; // leave-one-out jackknife
    size_t n = 0;
};

// Requires at least 5 samples (k4 divides by (n-1)(n-2)(n-3)).
KStatistics k_statistics(const std::vector<double>& xs);

// Exact k-statistics on rational inputs; same formulas, no jackknife.
std::array<Rational, 4> k_statistics_exact(const std::vector<Rational>& xs);

// Standard normal CDF via erfc; absolute error below 1e-14 across the line
// (the libm erfc is faithfully rounded), comfortably inside the 1e-12 the
// KS diagnostics assume.
double normal_cdf(double z);

// sup_x |F_n(x) - Phi(x)| after standardizing by the GIVEN mean and sd
// (diagram-predicted moments in the normality diagnostics, sample moments if
// the caller passes them).
double ks_distance_to_normal(std::vector<double> xs, double mean, double sd);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    bool weighted = false;
};

struct ScalingPoint {
    double lambda = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

// Least-squares slope of log(value) against log(lambda). Uses inverse
// log-variance weights when every point carries an error bar, plain OLS with
// residual-based slope error otherwise. Values must be positive.
ScalingFit fit_scaling_exponent(const std::vector<ScalingPoint>& points);

// Statulevicius-based Kolmogorov rate: gamma = r - 1, Delta ~ lambda^delta,
// normal distance O(Delta^(-1/(1+2 gamma))). Refuses regimes without a
// significant bound (sparse non-trees, vanishing exponents).
struct RatePrediction {
    Rational gamma;
    Rational delta_exponent;  // lambda-exponent of Delta
    Rational ks_rate;         // delta_exponent / (1 + 2 gamma)
};

RatePrediction rate_prediction(const RegimeSpec& regime, const PatternGraph& g);

// Two-sided tail table against the explicit concentration bound
//   2 exp( -(1/4) min( x^2 / 2^(1/(1+gamma)), (x Delta)^(1/(1+gamma)) ) ).
// (The x-free display shape 2 exp(-(1/4)(K lambda)^(1/r)) drops the
// x-dependence this bound carries; we keep the explicit form.)
struct ConcentrationRow {
    double x = 0.0;
    double empirical_tail = 0.0;  // P(|Z| >= x) over the standardized samples
    double bound = 0.0;
};

double concentration_bound(double x, double delta, int gamma);

std::vector<ConcentrationRow> concentration_check(const std::vector<double>& standardized,
                                                  double delta, int gamma,
                                                  const std::vector<double>& xs);

}  // namespace rcm
