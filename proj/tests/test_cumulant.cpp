#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "helpers.hpp"
#include "rcm/cumulant.hpp"
#include "rcm/quotient.hpp"
#include "rcm/rational.hpp"
#include "rcm/rng.hpp"
#include "rcm/weights.hpp"

using namespace rcm;

namespace {

Rational touchard(int n, const Rational& mu) {
    // E[X^n] for X ~ Poisson(mu) via Stirling numbers, small n only
    static const int64_t stirling[5][5] = {
        {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 1, 3, 1, 0}, {0, 1, 7, 6, 1}};
    Rational out(0);
    for (int k = 1; k <= n; ++k) out = out + Rational(stirling[n][k]) * mu.pow(k);
    return out;
}

// factorizing weight with pseudorandom exact rational values per component
// shape; row-exchangeable by construction since shapes are canonical
struct RandomFactorizing {
    uint64_t seed;

    Rational shape_value(const GridPartition& comp) const {
        auto s = comp.rgs_string();
        uint64_t h = mix_key(seed, mix_key(fnv1a64(s.data(), s.size()),
                                           static_cast<uint64_t>(comp.rows)));
        int64_t num = 1 + static_cast<int64_t>(h % 5);
        int64_t den = 1 + static_cast<int64_t>((h >> 8) % 4);
        if ((h >> 16) & 1) num = -num;
        return Rational(num, den);
    }

    Rational operator()(const GridPartition& p) const {
        Rational out(1);
        for (const auto& c : split_components(p)) out = out * shape_value(c.part);
        return out;
    }
};

// direct virtual-cumulant recursion over genuine set partitions of [m],
// independent of the profile-collapsed library path
Rational direct_virtual_cumulant(int m, const std::vector<Rational>& fhat) {
    if (m == 1) return fhat[0];
    Rational acc = fhat[m - 1];
    std::vector<uint32_t> blocks;
    testutil::oracle_partitions((1u << m) - 1, blocks, [&](const std::vector<uint32_t>& bs) {
        if (bs.size() < 2) return;
        Rational term(1);
        for (uint32_t b : bs) term = term * direct_virtual_cumulant(__builtin_popcount(b), fhat);
        acc = acc - term;
    });
    return acc;
}

}  // namespace

TEST_CASE("size profiles carry exact set-partition counts") {
    auto& p4 = size_profiles(4);
    CHECK(p4.size() == 5);
    __int128 total = 0;
    for (const auto& prof : p4) {
        total += prof.count;
        int cells = 0;
        for (auto [size, mult] : prof.parts) cells += size * mult;
        CHECK(cells == 4);
    }
    CHECK(static_cast<uint64_t>(total) == bell_number(4));
    for (const auto& prof : p4) {
        if (prof.parts == std::vector<std::pair<int, int>>{{2, 2}}) CHECK((int)prof.count == 3);
        if (prof.parts == std::vector<std::pair<int, int>>{{2, 1}, {1, 2}})
            CHECK((int)prof.count == 6);
        if (prof.parts == std::vector<std::pair<int, int>>{{3, 1}, {1, 1}})
            CHECK((int)prof.count == 4);
    }
    // order 20 exercises the __int128 coefficients
    __int128 t20 = 0;
    for (const auto& prof : size_profiles(20)) t20 += prof.count;
    CHECK(static_cast<uint64_t>(t20) == bell_number(20));
    CHECK(bell_number(20) == 51724158235372ull);
}

TEST_CASE("poisson moments convert to constant cumulants, exactly") {
    Rational mu(7, 3);
    std::vector<Rational> m;
    for (int n = 1; n <= 4; ++n) m.push_back(touchard(n, mu));
    auto k = cumulants_from_moments(m);
    for (auto& kn : k) CHECK(kn == mu);
    CHECK(moments_from_cumulants(k) == m);
}

TEST_CASE("gaussian moments yield (mu, var, 0, 0)") {
    Rational mu(3, 2), v(5, 4);
    std::vector<Rational> m = {mu, mu * mu + v, mu.pow(3) + Rational(3) * mu * v,
                               mu.pow(4) + Rational(6) * mu * mu * v + Rational(3) * v * v};
    auto k = cumulants_from_moments(m);
    CHECK(k[0] == mu);
    CHECK(k[1] == v);
    CHECK(k[2] == Rational(0));
    CHECK(k[3] == Rational(0));
}

TEST_CASE("conversion round trip: exact at order 20, float at order 8") {
    // the alternating (k-1)!-weighted sums make a double round trip at order
    // 20 meaningless (coefficients near 19! amplify rounding), so the full
    // order is validated exactly and the float path at a moderate order
    SplitMix64 rng(5150);
    std::vector<Rational> kappa(20);
    for (auto& x : kappa) x = Rational(static_cast<int64_t>(rng.next() % 5) - 2);
    auto m = moments_from_cumulants(kappa);
    CHECK(cumulants_from_moments(m) == kappa);

    std::vector<double> kd(8);
    for (auto& x : kd) x = rng.uniform(-1.0, 1.0);
    auto md = moments_from_cumulants(kd);
    auto back = cumulants_from_moments(md);
    for (int i = 0; i < 8; ++i)
        CHECK(back[i] == doctest::Approx(kd[i]).epsilon(1e-10).scale(1.0));
    for (int i = 0; i < 6; ++i)
        CHECK(back[i] == doctest::Approx(kd[i]).epsilon(1e-12).scale(1.0));

    CHECK_THROWS_AS(cumulants_from_moments(std::vector<double>(21, 0.0)), SizeLimitError);
    CHECK_THROWS_AS(cumulants_from_moments(std::vector<double>{}), SizeLimitError);
}

TEST_CASE("delta-method cumulants propagate first-order variance") {
    std::vector<Est> m = {{2.0, 0.01}, {5.0, 0.04}};
    auto k = cumulants_from_moments_delta(m);
    CHECK(k[0].value == doctest::Approx(2.0));
    CHECK(k[0].var == doctest::Approx(0.01));
    CHECK(k[1].value == doctest::Approx(1.0));  // 5 - 4
    // kappa2 = m2 - m1^2: var = (2 m1)^2 v1 + v2 = 16*0.01 + 0.04
    CHECK(k[1].var == doctest::Approx(0.20));

    SplitMix64 rng(31);
    std::vector<Est> me(6);
    std::vector<double> md(6);
    for (int i = 0; i < 6; ++i) {
        md[i] = rng.uniform(0.5, 3.0);
        me[i] = {md[i], rng.uniform(0.0, 0.01)};
    }
    auto kd = cumulants_from_moments(md);
    auto ke = cumulants_from_moments_delta(me);
    for (int i = 0; i < 6; ++i) {
        CHECK(ke[i].value == doctest::Approx(kd[i]).epsilon(1e-12));
        CHECK(ke[i].var >= 0.0);
    }
}

TEST_CASE("single-vertex pattern reproduces poisson moments and cumulants") {
    // N_G for a one-vertex pattern is the point count, Poisson(mass):
    // moment sums over [n]x[1] hit every set partition of [n] and weight it
    // mass^blocks, i.e. the Touchard polynomial; connected sums leave only
    // the one-block partition.
    auto g = PatternGraph::single_vertex();
    Rational mass(9, 2);
    ConstantKernelExactWeight w{&g, mass, Rational(1, 3)};
    for (int n = 1; n <= 4; ++n) {
        auto mom = moment_via_partitions<Rational>(n, 1, w, ExecMode::Serial);
        CHECK(mom.total == touchard(n, mass));
        auto cum = cumulant_via_connected<Rational>(n, 1, w, ExecMode::Serial);
        CHECK(cum.total == mass);
    }
}

TEST_CASE("edge-pattern moments under a constant kernel match direct combinatorics") {
    // N_edge = sum over ordered distinct pairs of the edge indicator. With X
    // points, E[(X)_k] = mass^k, so
    //   E[N] = cp * mass^2
    //   E[N^2] = 2 cp mass^2 + 4 cp^2 mass^3 + cp^2 mass^4
    auto g = PatternGraph::edge();
    Rational mass(5, 2), cp(3, 7);
    ConstantKernelExactWeight w{&g, mass, cp};

    auto m1 = moment_via_partitions<Rational>(1, 2, w, ExecMode::Serial).total;
    CHECK(m1 == cp * mass.pow(2));

    auto m2sum = moment_via_partitions<Rational>(2, 2, w, ExecMode::Serial);
    Rational want2 = Rational(2) * cp * mass.pow(2) + Rational(4) * cp.pow(2) * mass.pow(3) +
                     cp.pow(2) * mass.pow(4);
    CHECK(m2sum.total == want2);

    // block-count subtotals: 4 blocks = the disjoint-pair diagram, 3 blocks =
    // shared-vertex diagrams, 2 blocks = the doubled edge
    CHECK(m2sum.by_block_count.at(4) == cp.pow(2) * mass.pow(4));
    CHECK(m2sum.by_block_count.at(3) == Rational(4) * cp.pow(2) * mass.pow(3));
    CHECK(m2sum.by_block_count.at(2) == Rational(2) * cp * mass.pow(2));

    // kappa2: the disjoint diagram cancels against m1^2
    auto k2 = cumulant_via_connected<Rational>(2, 2, w, ExecMode::Serial).total;
    CHECK(k2 == m2sum.total - m1 * m1);
    CHECK(k2 == Rational(2) * cp * mass.pow(2) + Rational(4) * cp.pow(2) * mass.pow(3));

    // and the classical conversion reproduces it from raw moments
    auto kappa = cumulants_from_moments(std::vector<Rational>{m1, m2sum.total});
    CHECK(kappa[1] == k2);
}

TEST_CASE("virtual cumulants: constant weight frozen values") {
    PartitionWeight<Rational> one = [](const GridPartition&) { return Rational(1); };
    auto fhat = virtual_moments<Rational>(2, 2, one);
    CHECK(fhat[0] == Rational(2));   // Bell(2)
    CHECK(fhat[1] == Rational(15));  // Bell(4)
    auto c = virtual_cumulants_recursive(fhat);
    CHECK(c[0] == Rational(2));
    CHECK(c[1] == Rational(11));  // 15 - 2^2
    // connected partitions of [2]x[2]: 15 - Bell(2)^2 = 11 of them
    CHECK(connected_sum<Rational>(2, 2, one) == Rational(11));
}

TEST_CASE("recursive virtual cumulants equal connected sums for factorizing weights") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        RandomFactorizing f{seed * 1000003};
        for (int r = 2; r <= 4; ++r) {
            int nmax = 8 / r;
            auto fhat = virtual_moments<Rational>(nmax, r, f);
            auto c = virtual_cumulants_recursive(fhat);
            auto cm = virtual_cumulants_moebius(fhat);
            for (int n = 1; n <= nmax; ++n) {
                CAPTURE(seed);
                CAPTURE(r);
                CAPTURE(n);
                auto conn = connected_sum<Rational>(n, r, f);
                CHECK(c[n - 1] == conn);
                CHECK(cm[n - 1] == conn);
                CHECK(direct_virtual_cumulant(n, fhat) == conn);
            }
        }
    }
}

TEST_CASE("the identity has teeth: non-factorizing weights break it") {
    // indicator of connectedness multiplies to 1 across components, but the
    // partition itself is disconnected, so this weight is not factorizing
    PartitionWeight<Rational> ind = [](const GridPartition& p) {
        return Rational(is_connected(p) ? 1 : 0);
    };
    auto fhat = virtual_moments<Rational>(3, 2, ind);
    auto c = virtual_cumulants_recursive(fhat);
    CHECK(c[2] != connected_sum<Rational>(3, 2, ind));
}

TEST_CASE("symbolic tallies for the edge pattern at order 2") {
    auto g = PatternGraph::edge();
    SymbolicWeight w{&g};
    auto mom = moment_via_partitions<SymbolicTally>(2, 2, w, ExecMode::Serial).total;
    SymbolicTally want;
    want.terms[{4, 2}] = 1;
    want.terms[{3, 2}] = 4;
    want.terms[{2, 1}] = 2;
    CHECK(mom == want);

    auto cum = cumulant_via_connected<SymbolicTally>(2, 2, w, ExecMode::Serial).total;
    SymbolicTally wantc;
    wantc.terms[{3, 2}] = 4;
    wantc.terms[{2, 1}] = 2;
    CHECK(cum == wantc);
    CHECK(mom - cum == SymbolicTally{{{{4, 2}, 1}}});
}

TEST_CASE("intensity-decay scan picks the dominant diagram class") {
    SymbolicTally t;
    t.terms[{3, 2}] = 4;
    t.terms[{2, 1}] = 2;

    auto s = scan_intensity_decay(t, Rational(1, 2));
    CHECK_FALSE(s.empty);
    CHECK(s.exponent == Rational(2));  // 3 - 2*(1/2)
    CHECK(s.dominant_vertices == 3);
    CHECK(s.dominant_edges == 2);
    CHECK(s.dominant_count == 4);

    auto s2 = scan_intensity_decay(t, Rational(2));
    CHECK(s2.exponent == Rational(0));  // 2 - 2 beats 3 - 4
    CHECK(s2.dominant_vertices == 2);
    CHECK(s2.dominant_count == 2);

    auto sr = scan_radius_decay(t, Rational(1, 2));
    CHECK(sr.exponent == Rational(2));  // v - (1/2)(v-1) maximized at v=3
    CHECK(sr.dominant_vertices == 3);

    CHECK(scan_intensity_decay(SymbolicTally{}, Rational(1)).empty);
}

TEST_CASE("triangle order-2 scan matches the dilute-regime exponent arithmetic") {
    // kappa_2 of triangle counts: maximal diagrams have 1+(r-1)n = 5 vertices
    // and n|E| = 6 edges; with c_lambda = lambda^(-1/4) the class degree
    // 5 - 6/4 = 7/2 dominates
    auto g = PatternGraph::triangle();
    SymbolicWeight w{&g};
    auto tally = cumulant_via_connected<SymbolicTally>(2, 3, w, ExecMode::Serial).total;
    auto s = scan_intensity_decay(tally, Rational(1, 4));
    CHECK(s.exponent == Rational(7, 2));
    CHECK(s.dominant_vertices == 5);
    CHECK(s.dominant_edges == 6);
    CHECK(s.dominant_count == static_cast<long long>(count_maximal(2, 3)));
}

TEST_CASE("oversized grids are refused") {
    PartitionWeight<Rational> one = [](const GridPartition&) { return Rational(1); };
    CHECK_THROWS_AS(moment_via_partitions<Rational>(2, 9, one, ExecMode::Serial),
                    SizeLimitError);
    CHECK_THROWS_AS(virtual_moments<Rational>(2, 7, one), SizeLimitError);
}
