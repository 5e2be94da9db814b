#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rcm/kernel.hpp"
#include "rcm/pattern.hpp"
#include "rcm/rng.hpp"
#include "rcm/stats.hpp"

using namespace rcm;

TEST_CASE("exact k-statistics match hand-computed values") {
    auto sym = k_statistics_exact({Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)});
    CHECK(sym[0] == Rational(3));
    CHECK(sym[1] == Rational(5, 2));
    CHECK(sym[2] == Rational(0));
    CHECK(sym[3] == Rational(-15, 2));

    auto skew = k_statistics_exact({Rational(0), Rational(0), Rational(0), Rational(1), Rational(2)});
    CHECK(skew[0] == Rational(3, 5));
    CHECK(skew[1] == Rational(4, 5));
    CHECK(skew[2] == Rational(9, 10));
    CHECK(skew[3] == Rational(1, 5));

    CHECK_THROWS_AS(k_statistics_exact({Rational(1), Rational(2), Rational(3), Rational(4)}),
                    std::invalid_argument);
}

TEST_CASE("k-statistics are exactly unbiased for the cumulants") {
    // enumerate every Bernoulli(1/3) sample of size 5 and average k_j exactly
    Rational p(1, 3), q(2, 3);
    std::array<Rational, 4> expect{};
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<Rational> xs;
        int ones = 0;
        for (int i = 0; i < 5; ++i) {
            int bit = (mask >> i) & 1;
            ones += bit;
            xs.push_back(Rational(bit));
        }
        Rational w(1);
        for (int i = 0; i < ones; ++i) w *= p;
        for (int i = 0; i < 5 - ones; ++i) w *= q;
        auto ks = k_statistics_exact(xs);
        for (int j = 0; j < 4; ++j) expect[j] += w * ks[j];
    }
    CHECK(expect[0] == p);                                            // kappa1 = p
    CHECK(expect[1] == p * q);                                        // kappa2 = pq
    CHECK(expect[2] == p * q * (Rational(1) - Rational(2) * p));      // pq(1-2p)
    CHECK(expect[3] == p * q * (Rational(1) - Rational(6) * p * q));  // pq(1-6pq)
}

TEST_CASE("floating k-statistics agree with the exact path and jackknife behaves") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 5 + static_cast<int>(rng.next() % 40);
        std::vector<double> xs;
        std::vector<Rational> xr;
        for (int i = 0; i < n; ++i) {
            long long v = static_cast<long long>(rng.next() % 17) - 8;
            xs.push_back(static_cast<double>(v));
            xr.push_back(Rational(v));
        }
        auto got = k_statistics(xs);
        auto want = k_statistics_exact(xr);
        REQUIRE(got.n == static_cast<size_t>(n));
        for (int j = 0; j < 4; ++j) {
            CHECK(got.k[j] == doctest::Approx(want[j].to_double()).epsilon(1e-9).scale(1.0));
            CHECK(got.std_error[j] >= 0.0);
        }
        // leave-one-out jackknife of the mean collapses to s/sqrt(n)
        double s_over_sqrtn = std::sqrt(got.k[1] / static_cast<double>(n));
        CHECK(got.std_error[0] == doctest::Approx(s_over_sqrtn).epsilon(1e-10));
    }
    CHECK_THROWS_AS(k_statistics({1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
}

TEST_CASE("normal cdf matches high-precision reference values") {
    struct Row { double z, phi; };
    const Row rows[] = {
        {0.0, 0.5},
        {1.0, 0.8413447460685429485852},
        {-1.0, 0.1586552539314570514148},
        {1.96, 0.9750021048517795637872},
        {-2.5, 0.006209665325776135166978},
        {0.5, 0.6914624612740131036377},
        {3.7, 0.9998922002665226117385},
    };
    for (const auto& row : rows) {
        CAPTURE(row.z);
        CHECK(std::fabs(normal_cdf(row.z) - row.phi) < 5e-15);
    }
    CHECK(normal_cdf(-8.0) == doctest::Approx(6.220960574271784e-16).epsilon(1e-10));
    CHECK(normal_cdf(-40.0) >= 0.0);
    CHECK(normal_cdf(40.0) == 1.0);
}

TEST_CASE("KS distance: frozen value, affine invariance, validation") {
    // three points -1,0,1 standardized by (0,1): sup is 1/3 - Phi(-1)
    double d = ks_distance_to_normal({-1.0, 0.0, 1.0}, 0.0, 1.0);
    CHECK(d == doctest::Approx(0.1746780794018762819).epsilon(1e-13));

    SplitMix64 rng(7);
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(rng.uniform() * 4.0 - 2.0);
    double base = ks_distance_to_normal(xs, 0.3, 1.7);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.5 * x + 11.0);
    double moved = ks_distance_to_normal(ys, 2.5 * 0.3 + 11.0, 2.5 * 1.7);
    CHECK(base == doctest::Approx(moved).epsilon(1e-12));
    CHECK(base > 0.0);
    CHECK(base <= 1.0);

    CHECK_THROWS_AS(ks_distance_to_normal({}, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ks_distance_to_normal({1.0}, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ks_distance_to_normal({1.0}, 0.0, -2.0), std::invalid_argument);
}

TEST_CASE("slope fit recovers exact power laws") {
    auto mk = [](double lam, double val, double se) { return ScalingPoint{lam, val, se}; };

    std::vector<ScalingPoint> pts;
    for (double lam : {10.0, 20.0, 40.0, 80.0, 160.0})
        pts.push_back(mk(lam, 3.7 * std::pow(lam, 2.5), 0.0));
    auto fit = fit_scaling_exponent(pts);
    CHECK(!fit.weighted);
    CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.7)).epsilon(1e-12));
    CHECK(fit.slope_se == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    // error bars switch on the weighted path; exact data still gives the slope
    for (auto& p : pts) p.std_error = 0.01 * p.value * (1.0 + 0.3 * std::sin(p.lambda));
    auto wfit = fit_scaling_exponent(pts);
    CHECK(wfit.weighted);
    CHECK(wfit.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(wfit.slope_se > 0.0);

    // noisy data: slope lands near truth, se is honest about the scatter
    SplitMix64 rng(88);
    std::vector<ScalingPoint> noisy;
    for (double lam : {8.0, 16.0, 32.0, 64.0, 128.0, 256.0})
        noisy.push_back(mk(lam, std::pow(lam, 1.5) * std::exp(0.02 * (rng.uniform() - 0.5)), 0.0));
    auto nfit = fit_scaling_exponent(noisy);
    CHECK(std::fabs(nfit.slope - 1.5) < 0.02);

    CHECK_THROWS_AS(fit_scaling_exponent({mk(10.0, 5.0, 0.0)}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling_exponent({mk(10.0, 5.0, 0.0), mk(20.0, -1.0, 0.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling_exponent({mk(-1.0, 5.0, 0.0), mk(20.0, 1.0, 0.0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling_exponent({mk(10.0, 5.0, 0.0), mk(10.0, 6.0, 0.0)}),
                    std::invalid_argument);
}

TEST_CASE("rate predictions: frozen exponents and refusals") {
    auto triangle = PatternGraph::triangle();
    auto edge = PatternGraph::edge();
    auto path3 = PatternGraph::path(3);

    auto dil = rate_prediction({RegimeType::Dilute, Rational(1, 4), 2}, triangle);
    CHECK(dil.gamma == Rational(2));
    CHECK(dil.delta_exponent == Rational(1, 2));
    CHECK(dil.ks_rate == Rational(1, 10));

    auto sp1 = rate_prediction({RegimeType::Sparse, Rational(1), 2}, edge);
    CHECK(sp1.gamma == Rational(1));
    CHECK(sp1.delta_exponent == Rational(1, 2));
    CHECK(sp1.ks_rate == Rational(1, 6));

    // tree on three vertices, decay 6/5: kappa_2 grows like lambda^(3/5)
    auto sp2 = rate_prediction({RegimeType::Sparse, Rational(6, 5), 2}, path3);
    CHECK(sp2.delta_exponent == Rational(3, 10));
    CHECK(sp2.ks_rate == Rational(3, 50));

    auto rd = rate_prediction({RegimeType::RggDense, Rational(1, 4), 2}, triangle);
    CHECK(rd.ks_rate == Rational(1, 10));
    auto th = rate_prediction({RegimeType::RggThermodynamic, Rational(1, 2), 2}, edge);
    CHECK(th.ks_rate == Rational(1, 6));

    auto rs = rate_prediction({RegimeType::RggSparse, Rational(3, 4), 2}, edge);
    CHECK(rs.delta_exponent == Rational(1, 4));
    CHECK(rs.ks_rate == Rational(1, 12));

    // refusals: non-tree sparse, flat kappa_2, inadmissible decay
    CHECK_THROWS_AS(rate_prediction({RegimeType::Sparse, Rational(1), 2}, triangle), RegimeError);
    CHECK_THROWS_AS(rate_prediction({RegimeType::Sparse, Rational(2), 2}, edge), RegimeError);
    CHECK_THROWS_AS(rate_prediction({RegimeType::Sparse, Rational(1, 2), 2}, edge), RegimeError);
    CHECK_THROWS_AS(rate_prediction({RegimeType::RggSparse, Rational(3, 4), 2}, triangle),
                    RegimeError);
    CHECK_THROWS_AS(rate_prediction({RegimeType::RggSparse, Rational(1, 2), 2}, edge), RegimeError);
}

TEST_CASE("concentration bound: frozen values, shape, empirical table") {
    CHECK(concentration_bound(2.0, 16.0, 1) == doctest::Approx(0.9861373827904796).epsilon(1e-13));
    CHECK(concentration_bound(0.5, 1000.0, 2) == doctest::Approx(1.9032080271042253).epsilon(1e-13));
    // with tiny delta the (x delta)^(1/(1+gamma)) branch takes over
    CHECK(concentration_bound(100.0, 0.01, 1) == doctest::Approx(1.5576015661428098).epsilon(1e-13));

    double prev = 2.0;
    for (double x = 0.0; x <= 6.0; x += 0.25) {
        double b = concentration_bound(x, 50.0, 2);
        CHECK(b <= prev + 1e-15);
        CHECK(b <= 2.0);
        CHECK(b >= 0.0);
        prev = b;
    }

    std::vector<double> z = {0.1, 0.5, -2.0, 3.0};
    auto rows = concentration_check(z, 50.0, 1, {0.0, 1.0, 2.5});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].empirical_tail == 1.0);
    CHECK(rows[1].empirical_tail == 0.5);
    CHECK(rows[2].empirical_tail == 0.25);
    for (const auto& row : rows)
        CHECK(row.bound == concentration_bound(row.x, 50.0, 1));
    CHECK_THROWS_AS(concentration_check({}, 1.0, 1, {1.0}), std::invalid_argument);
}
