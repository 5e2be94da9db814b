#include "rcm/cumulant.hpp"

#include <algorithm>
#include <array>
#include <mutex>

namespace rcm {

namespace {

__int128 factorial128(int n) {
    __int128 f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<SizeProfile> build_profiles(int n) {
    std::vector<SizeProfile> out;
    // Integer partitions of n, largest part first.
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
        if (remaining == 0) {
            SizeProfile prof;
            __int128 denom = 1;
            int i = 0;
            while (i < static_cast<int>(parts.size())) {
                int j = i;
                while (j < static_cast<int>(parts.size()) && parts[j] == parts[i]) ++j;
                int size = parts[i], mult = j - i;
                prof.parts.push_back({size, mult});
                for (int k = 0; k < mult; ++k) denom *= factorial128(size);
                denom *= factorial128(mult);
                i = j;
            }
            prof.block_count = static_cast<int>(parts.size());
            prof.count = factorial128(n) / denom;
            out.push_back(std::move(prof));
            return;
        }
        for (int p = std::min(remaining, maxpart); p >= 1; --p) {
            parts.push_back(p);
            rec(remaining - p, p);
            parts.pop_back();
        }
    };
    rec(n, n);
    return out;
}

}  // namespace

const std::vector<SizeProfile>& size_profiles(int n) {
    detail::check_order(n);
    static std::array<std::vector<SizeProfile>, kMaxConversionOrder + 1> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache[n].empty()) cache[n] = build_profiles(n);
    return cache[n];
}

std::vector<Est> cumulants_from_moments_delta(const std::vector<Est>& moments) {
    detail::check_order(static_cast<int>(moments.size()));
    int n = static_cast<int>(moments.size());
    std::vector<Est> kappa(n);
    for (int order = 1; order <= n; ++order) {
        double value = 0.0;
        std::vector<double> grad(order, 0.0);  // d kappa_order / d m_i
        for (const auto& prof : size_profiles(order)) {
            double coeff = static_cast<double>(prof.count);
            for (int b = 1; b < prof.block_count; ++b) coeff *= -b;
            // exponent of m_size in this profile's product
            std::array<int, kMaxConversionOrder + 1> expo{};
            for (auto [size, mult] : prof.parts) expo[size] = mult;
            double prod = coeff;
            for (int s = 1; s <= order; ++s)
                for (int j = 0; j < expo[s]; ++j) prod *= moments[s - 1].value;
            value += prod;
            for (int s = 1; s <= order; ++s) {
                if (expo[s] == 0) continue;
                double dp = coeff * expo[s];
                for (int t = 1; t <= order; ++t) {
                    int e = expo[t] - (t == s ? 1 : 0);
                    for (int j = 0; j < e; ++j) dp *= moments[t - 1].value;
                }
                grad[s - 1] += dp;
            }
        }
        double var = 0.0;
        for (int s = 1; s <= order; ++s) var += grad[s - 1] * grad[s - 1] * moments[s - 1].var;
        kappa[order - 1] = Est{value, var};
    }
    return kappa;
}

namespace {

ExponentScan scan_impl(const SymbolicTally& tally,
                       const std::function<Rational(int, int)>& degree) {
    ExponentScan scan;
    for (auto& [key, count] : tally.terms) {
        if (count == 0) continue;
        Rational d = degree(key.first, key.second);
        if (scan.empty || d > scan.exponent) {
            scan.exponent = d;
            scan.dominant_vertices = key.first;
            scan.dominant_edges = key.second;
            scan.dominant_count = count;
            scan.empty = false;
        } else if (d == scan.exponent) {
            scan.dominant_count += count;
        }
    }
    return scan;
}

}  // namespace

ExponentScan scan_intensity_decay(const SymbolicTally& tally, const Rational& decay) {
    return scan_impl(tally, [&](int v, int e) {
        return Rational(v) - decay * Rational(e);
    });
}

ExponentScan scan_radius_decay(const SymbolicTally& tally, const Rational& de) {
    return scan_impl(tally, [&](int v, int) {
        return Rational(v) - de * Rational(v - 1);
    });
}

}  // namespace rcm
