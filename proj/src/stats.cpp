#include "rcm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcm {

namespace {

// k1..k4 from power sums S_p = sum x^p over n samples. Standard unbiased
// k-statistic formulas; E[k_p] equals the population cumulant exactly.
template <class T>
std::array<T, 4> kstats_from_power_sums(const std::array<T, 5>& s, long long n) {
    T nn(n);
    std::array<T, 4> k{};
    k[0] = s[1] / nn;
    T n1(n - 1), n2(n - 2), n3(n - 3);
    k[1] = (nn * s[2] - s[1] * s[1]) / (nn * n1);
    k[2] = (nn * nn * s[3] - T(3) * nn * s[1] * s[2] + T(2) * s[1] * s[1] * s[1]) /
           (nn * n1 * n2);
    k[3] = ((nn * nn * nn + nn * nn) * s[4] - T(4) * (nn * nn + nn) * s[1] * s[3] -
            T(3) * (nn * nn - nn) * s[2] * s[2] + T(12) * nn * s[1] * s[1] * s[2] -
            T(6) * s[1] * s[1] * s[1] * s[1]) /
           (nn * n1 * n2 * n3);
    return k;
}

}  // namespace

KStatistics k_statistics(const std::vector<double>& xs) {
    size_t n = xs.size();
    if (n < 5) throw std::invalid_argument("k_statistics needs at least 5 samples");
    std::array<double, 5> s{};
    for (double x : xs) {
        double p = x;
        for (int i = 1; i <= 4; ++i) {
            s[i] += p;
            p *= x;
        }
    }
    KStatistics out;
    out.n = n;
    out.k = kstats_from_power_sums<double>(s, static_cast<long long>(n));

    // Leave-one-out jackknife by power-sum downdating.
    std::array<double, 4> mean{};
    std::vector<std::array<double, 4>> loo(n);
    for (size_t j = 0; j < n; ++j) {
        std::array<double, 5> sj = s;
        double p = xs[j];
        for (int i = 1; i <= 4; ++i) {
            sj[i] -= p;
            p *= xs[j];
        }
        loo[j] = kstats_from_power_sums<double>(sj, static_cast<long long>(n - 1));
        for (int i = 0; i < 4; ++i) mean[i] += loo[j][i];
    }
    for (int i = 0; i < 4; ++i) mean[i] /= static_cast<double>(n);
    for (int i = 0; i < 4; ++i) {
        double ss = 0.0;
        for (size_t j = 0; j < n; ++j) {
            double d = loo[j][i] - mean[i];
            ss += d * d;
        }
        out.std_error[i] = std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return out;
}

std::array<Rational, 4> k_statistics_exact(const std::vector<Rational>& xs) {
    if (xs.size() < 5) throw std::invalid_argument("k_statistics needs at least 5 samples");
    std::array<Rational, 5> s{};
    for (const Rational& x : xs) {
        Rational p = x;
        for (int i = 1; i <= 4; ++i) {
            s[i] += p;
            p *= x;
        }
    }
    return kstats_from_power_sums<Rational>(s, static_cast<long long>(xs.size()));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / 1.4142135623730950488016887242097); }

double ks_distance_to_normal(std::vector<double> xs, double mean, double sd) {
    if (xs.empty()) throw std::invalid_argument("ks_distance_to_normal needs samples");
    if (sd <= 0.0) throw std::invalid_argument("ks_distance_to_normal needs positive sd");
    for (double& x : xs) x = (x - mean) / sd;
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double phi = normal_cdf(xs[i]);
        double hi = std::fabs(static_cast<double>(i + 1) / n - phi);
        double lo = std::fabs(phi - static_cast<double>(i) / n);
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

ScalingFit fit_scaling_exponent(const std::vector<ScalingPoint>& points) {
    if (points.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
    size_t n = points.size();
    bool weighted = true;
    for (const auto& p : points) {
        if (p.lambda <= 0.0 || p.value <= 0.0)
            throw std::invalid_argument("slope fit needs positive lambdas and values");
        if (p.std_error <= 0.0) weighted = false;
    }
    std::vector<double> x(n), y(n), w(n, 1.0);
    for (size_t i = 0; i < n; ++i) {
        x[i] = std::log(points[i].lambda);
        y[i] = std::log(points[i].value);
        // var(log v) ~ (se/v)^2
        if (weighted) w[i] = points[i].value * points[i].value /
                             (points[i].std_error * points[i].std_error);
    }
    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    double xbar = swx / sw, ybar = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += w[i] * (x[i] - xbar) * (x[i] - xbar);
        sxy += w[i] * (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("slope fit needs at least two distinct lambdas");
    ScalingFit fit;
    fit.weighted = weighted;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    if (weighted) {
        fit.slope_se = std::sqrt(1.0 / sxx);
    } else if (n > 2) {
        double rss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.slope_se = std::sqrt(rss / (static_cast<double>(n - 2) * sxx));
    }
    return fit;
}

RatePrediction rate_prediction(const RegimeSpec& regime, const PatternGraph& g) {
    Rational r(g.vcount);
    Rational gamma = r - Rational(1);
    Rational denom = Rational(1) + Rational(2) * gamma;  // = 2r - 1
    Rational delta;
    switch (regime.type) {
        case RegimeType::Dilute:
        case RegimeType::RggDense:
        case RegimeType::RggThermodynamic:
            // Delta = sqrt(K lambda)
            delta = Rational(1, 2);
            break;
        case RegimeType::Sparse: {
            if (!g.is_tree())
                throw RegimeError(
                    "sparse regime: no significant normal-approximation bound for non-trees");
            if (regime.decay < Rational(1))
                throw RegimeError("sparse regime requires decay >= 1");
            Rational growth = regime.decay - (regime.decay - Rational(1)) * r;
            if (!(growth > Rational(0)))
                throw RegimeError("sparse tree rate needs decay < r/(r-1); kappa_2 does not grow");
            delta = growth / Rational(2);
            break;
        }
        case RegimeType::RggSparse: {
            Rational de = Rational(regime.dim) * regime.decay;
            if (!(de > Rational(1))) throw RegimeError("rgg_sparse requires dim * decay > 1");
            Rational growth = r - de * (r - Rational(1));
            if (!(growth > Rational(0)))
                throw RegimeError("rgg_sparse rate needs r - d e (r-1) > 0");
            // Delta = lambda^(r/2) R_lambda^((r-1) d / 2)
            delta = growth / Rational(2);
            break;
        }
    }
    return RatePrediction{gamma, delta, delta / denom};
}

double concentration_bound(double x, double delta, int gamma) {
    double inv = 1.0 / (1.0 + gamma);
    double a = x * x / std::pow(2.0, inv);
    double b = std::pow(x * delta, inv);
    return 2.0 * std::exp(-0.25 * std::min(a, b));
}

std::vector<ConcentrationRow> concentration_check(const std::vector<double>& standardized,
                                                  double delta, int gamma,
                                                  const std::vector<double>& xs) {
    if (standardized.empty())
        throw std::invalid_argument("concentration_check needs samples");
    std::vector<ConcentrationRow> rows;
    for (double x : xs) {
        size_t hits = 0;
        for (double z : standardized)
            if (std::fabs(z) >= x) ++hits;
        rows.push_back({x, static_cast<double>(hits) / static_cast<double>(standardized.size()),
                        concentration_bound(x, delta, gamma)});
    }
    return rows;
}

}  // namespace rcm
