#pragma once

#include <cmath>

namespace rcm {

// Value with an attached estimator variance. Exact quantities carry var = 0.
// Sums assume independent errors; products use the exact independent-product
// variance x^2*vy + y^2*vx + vx*vy. Cached sub-diagram estimates shared
// between sums make downstream comparisons conservative, never optimistic.
struct Est {
    double value = 0.0;
    double var = 0.0;

    static Est exact(double v) { return {v, 0.0}; }

    double std_error() const { return std::sqrt(var); }

    Est operator+(const Est& o) const { return {value + o.value, var + o.var}; }
    Est operator-(const Est& o) const { return {value - o.value, var + o.var}; }
    Est operator*(const Est& o) const {
        return {value * o.value,
                value * value * o.var + o.value * o.value * var + var * o.var};
    }
    Est& operator+=(const Est& o) { return *this = *this + o; }
    Est& operator*=(const Est& o) { return *this = *this * o; }

    Est scaled(double c) const { return {c * value, c * c * var}; }
};

}  // namespace rcm
