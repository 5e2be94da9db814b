#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rcm {

// Exact rational arithmetic on 128-bit integers. Used wherever the artifact
// promises exact answers: counting identities, constant-kernel cumulants,
// exponent predictions and rate arithmetic. Overflow throws instead of
// wrapping; the desk-scale inputs we care about stay far below the limit.
class Rational {
public:
    using Int = __int128;

    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational from_int128(Int n, Int d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        r.normalize();
        return r;
    }

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view s);

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const { return from_int128(-num_, den_); }

    Rational operator+(const Rational& o) const {
        return from_int128(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                           checked_mul(den_, o.den_));
    }
    Rational operator-(const Rational& o) const { return *this + (-o); }
    Rational operator*(const Rational& o) const {
        return from_int128(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational division by zero");
        return from_int128(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational pow(int e) const {
        if (e < 0) return (Rational(1) / *this).pow(-e);
        Rational out(1);
        Rational base = *this;
        while (e > 0) {
            if (e & 1) out *= base;
            base = (e > 1) ? base * base : base;
            e >>= 1;
        }
        return out;
    }

    // "p" for integers, "p/q" otherwise.
    std::string str() const;

private:
    Int num_ = 0;
    Int den_ = 1;

    static Int checked_add(Int a, Int b) {
        Int r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow (+)");
        return r;
    }
    static Int checked_mul(Int a, Int b) {
        Int r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow (*)");
        return r;
    }
    static Int gcd128(Int a, Int b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            Int t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }
};

inline std::string int128_str(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

inline std::string Rational::str() const {
    if (den_ == 1) return int128_str(num_);
    return int128_str(num_) + "/" + int128_str(den_);
}

inline Rational Rational::parse(std::string_view s) {
    auto parse_int = [](std::string_view t) -> long long {
        if (t.empty()) throw std::invalid_argument("empty rational component");
        size_t i = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            i = 1;
        }
        if (i == t.size()) throw std::invalid_argument("bad rational: " + std::string(t));
        long long v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("bad rational: " + std::string(t));
            if (__builtin_mul_overflow(v, 10LL, &v) ||
                __builtin_add_overflow(v, static_cast<long long>(t[i] - '0'), &v))
                throw std::overflow_error("rational parse overflow");
        }
        return neg ? -v : v;
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

}  // namespace rcm
