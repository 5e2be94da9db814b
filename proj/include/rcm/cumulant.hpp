#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rcm/est.hpp"
#include "rcm/partition.hpp"
#include "rcm/rational.hpp"

namespace rcm {

// Moment/cumulant algebra over partition diagrams. Everything here is generic
// over the value type T: exact rationals for identities, doubles for generic
// weights, Est for Monte Carlo backed weights, SymbolicTally for exponent
// bookkeeping. T needs value-initialized zero and operator+; the conversion
// and recursion routines additionally multiply values and scale by (large)
// integer coefficients, passed as __int128 to survive order 20.

enum class ExecMode { Serial, Parallel };

// ---------------------------------------------------------------------------
// Integer-partition profiles with exact set-partition counts.
//
// All sums over set partitions of [n] in the moment<->cumulant conversions
// and in the virtual cumulant recursion collapse to sums over block-size
// profiles, because the weights involved depend on block sizes only
// (row-exchangeability). The number of set partitions realizing a profile
// with m_j blocks of size j is n! / prod_j ( (j!)^m_j * m_j! ).

struct SizeProfile {
    std::vector<std::pair<int, int>> parts;  // (block size, multiplicity), sizes descending
    int block_count = 0;
    __int128 count = 0;
};

inline constexpr int kMaxConversionOrder = 20;

const std::vector<SizeProfile>& size_profiles(int n);  // cached, 1 <= n <= 20

namespace detail {

template <class T>
T from_coeff(__int128 c) {
    return T(static_cast<double>(c));
}
template <>
inline Rational from_coeff<Rational>(__int128 c) {
    return Rational::from_int128(c, 1);
}

inline void check_order(int n) {
    if (n < 1 || n > kMaxConversionOrder)
        throw SizeLimitError("moment/cumulant conversion supports orders 1..20");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical conversions. Vectors are 1-based in meaning: v[0] is order 1.

// kappa_n = sum over profiles of (-1)^(k-1) (k-1)! count prod_j m_{size_j}
template <class T>
std::vector<T> cumulants_from_moments(const std::vector<T>& moments) {
    detail::check_order(static_cast<int>(moments.size()));
    int n = static_cast<int>(moments.size());
    std::vector<T> kappa(n);
    for (int order = 1; order <= n; ++order) {
        T acc{};
        for (const auto& prof : size_profiles(order)) {
            __int128 coeff = prof.count;
            for (int b = 1; b < prof.block_count; ++b) coeff *= -b;  // (-1)^(k-1) (k-1)!
            T term = detail::from_coeff<T>(coeff);
            for (auto [size, mult] : prof.parts)
                for (int j = 0; j < mult; ++j) term = term * moments[size - 1];
            acc = acc + term;
        }
        kappa[order - 1] = acc;
    }
    return kappa;
}

// m_n = sum over profiles of count prod_j kappa_{size_j}
template <class T>
std::vector<T> moments_from_cumulants(const std::vector<T>& kappa) {
    detail::check_order(static_cast<int>(kappa.size()));
    int n = static_cast<int>(kappa.size());
    std::vector<T> moments(n);
    for (int order = 1; order <= n; ++order) {
        T acc{};
        for (const auto& prof : size_profiles(order)) {
            T term = detail::from_coeff<T>(prof.count);
            for (auto [size, mult] : prof.parts)
                for (int j = 0; j < mult; ++j) term = term * kappa[size - 1];
            acc = acc + term;
        }
        moments[order - 1] = acc;
    }
    return moments;
}

// Est variant with first-order (delta method) error propagation. Moment
// estimates are treated as independent; see the header note on conservatism.
std::vector<Est> cumulants_from_moments_delta(const std::vector<Est>& moments);

// ---------------------------------------------------------------------------
// Diagram sums.

template <class T>
struct DiagramSum {
    T total{};
    std::map<int, T> by_block_count;
};

template <class T>
using PartitionWeight = std::function<T(const GridPartition&)>;

inline int default_split_depth(int rows, int cols) {
    // Enough prefixes for useful fan-out (Bell(7) = 877 subtrees at depth 7)
    // without measurable bookkeeping cost on small grids.
    return rows * cols < 7 ? rows * cols : 7;
}

// The parallel path accumulates one partial sum per enumeration prefix and
// merges them in prefix order, so results do not depend on the worker count.
// In exact arithmetic serial and parallel agree exactly; in float arithmetic
// they differ only by the associativity of the regrouped additions.
template <class T>
DiagramSum<T> sum_partitions(int rows, int cols, PartitionFilter filter,
                             const PartitionWeight<T>& weight, ExecMode mode) {
    check_enumeration_size(rows, cols, filter);
    DiagramSum<T> out;
    auto accumulate = [](DiagramSum<T>& acc, const GridPartition& p, const T& w) {
        acc.total = acc.total + w;
        auto it = acc.by_block_count.try_emplace(p.block_count).first;
        it->second = it->second + w;
    };
    if (mode == ExecMode::Serial) {
        enumerate_partitions(rows, cols, filter, [&](const GridPartition& p) {
            accumulate(out, p, weight(p));
            return true;
        });
        return out;
    }
    auto prefixes = enumerate_prefixes(rows, cols, filter, default_split_depth(rows, cols));
    std::vector<DiagramSum<T>> partial(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(prefixes.size()); ++i) {
        enumerate_from_prefix(rows, cols, filter, prefixes[i], [&](const GridPartition& p) {
            accumulate(partial[i], p, weight(p));
            return true;
        });
    }
    for (auto& part : partial) {
        out.total = out.total + part.total;
        for (auto& [k, v] : part.by_block_count) {
            auto it = out.by_block_count.try_emplace(k).first;
            it->second = it->second + v;
        }
    }
    return out;
}

// Moments of N_G: sum of the weight over non-flat partitions of [n] x [r].
// The RCM weight vanishes on flat partitions, so the filter is an
// optimization, not a restriction.
template <class T>
DiagramSum<T> moment_via_partitions(int order, int cols, const PartitionWeight<T>& weight,
                                    ExecMode mode = ExecMode::Parallel) {
    return sum_partitions<T>(order, cols, PartitionFilter::NonFlat, weight, mode);
}

// Cumulants of N_G: same sum restricted to connected partitions.
template <class T>
DiagramSum<T> cumulant_via_connected(int order, int cols, const PartitionWeight<T>& weight,
                                     ExecMode mode = ExecMode::Parallel) {
    return sum_partitions<T>(order, cols, PartitionFilter::ConnectedNonFlat, weight, mode);
}

// ---------------------------------------------------------------------------
// Virtual cumulants of a weight F on grid partitions.
//
// fhat(m) sums F over ALL partitions of [m] x [r] (flats included; generic F
// need not vanish there). The virtual cumulant C(m) is defined recursively by
//   C(1) = fhat(1),
//   C(m) = fhat(m) - sum over set partitions of [m] with >= 2 blocks of
//          prod_b C(|b|),
// which collapses to size profiles for row-exchangeable F. For factorizing F
// the same numbers equal the sum of F over connected partitions.

template <class T>
std::vector<T> virtual_moments(int n, int cols, const PartitionWeight<T>& weight,
                               ExecMode mode = ExecMode::Serial) {
    std::vector<T> fhat(n);
    for (int m = 1; m <= n; ++m)
        fhat[m - 1] = sum_partitions<T>(m, cols, PartitionFilter::All, weight, mode).total;
    return fhat;
}

template <class T>
std::vector<T> virtual_cumulants_recursive(const std::vector<T>& fhat) {
    detail::check_order(static_cast<int>(fhat.size()));
    int n = static_cast<int>(fhat.size());
    std::vector<T> c(n);
    for (int m = 1; m <= n; ++m) {
        T acc = fhat[m - 1];
        for (const auto& prof : size_profiles(m)) {
            if (prof.block_count < 2) continue;
            T term = detail::from_coeff<T>(prof.count);
            for (auto [size, mult] : prof.parts)
                for (int j = 0; j < mult; ++j) term = term * c[size - 1];
            acc = acc - term;
        }
        c[m - 1] = acc;
    }
    return c;
}

// Moebius closed form over the partition lattice of [n]; algebraically the
// same sum as cumulants_from_moments applied to fhat.
template <class T>
std::vector<T> virtual_cumulants_moebius(const std::vector<T>& fhat) {
    return cumulants_from_moments<T>(fhat);
}

template <class T>
T connected_sum(int n, int cols, const PartitionWeight<T>& weight,
                ExecMode mode = ExecMode::Serial) {
    return sum_partitions<T>(n, cols, PartitionFilter::Connected, weight, mode).total;
}

// ---------------------------------------------------------------------------
// Symbolic tally: counts diagrams by (vertex count, deduplicated edge count)
// of their quotient graph. Substituting c_lambda = base*lambda^(-a) turns a
// tally into lambda-degrees; the scan reports the dominant class.

struct SymbolicTally {
    std::map<std::pair<int, int>, long long> terms;

    SymbolicTally operator+(const SymbolicTally& o) const {
        SymbolicTally out = *this;
        for (auto& [k, v] : o.terms) out.terms[k] += v;
        return out;
    }
    SymbolicTally& operator+=(const SymbolicTally& o) { return *this = *this + o; }
    SymbolicTally operator-(const SymbolicTally& o) const {
        SymbolicTally out = *this;
        for (auto& [k, v] : o.terms) {
            out.terms[k] -= v;
            if (out.terms[k] == 0) out.terms.erase(k);
        }
        return out;
    }
    bool operator==(const SymbolicTally& o) const { return terms == o.terms; }
};

struct ExponentScan {
    Rational exponent;
    int dominant_vertices = 0;
    int dominant_edges = 0;
    long long dominant_count = 0;
    bool empty = true;
};

// Degree of a class under c_lambda = lambda^(-decay): vertices - decay*edges.
ExponentScan scan_intensity_decay(const SymbolicTally& tally, const Rational& decay);

// Degree under a scaled radius R_lambda = lambda^(-e) in dimension d: every
// connected diagram contributes lambda^(v - d*e*(v-1)) regardless of excess
// edges (spanning-tree bound above, kernel lower bound below).
ExponentScan scan_radius_decay(const SymbolicTally& tally, const Rational& de);

}  // namespace rcm
