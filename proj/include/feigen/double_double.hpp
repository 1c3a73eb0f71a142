#pragma once

/**
 * @file double_double.hpp
 * @brief Compensated double-double arithmetic (about 32 significant digits).
 *
 * A value is stored as an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
 * Only the operations needed by the map evaluator are provided: the four
 * arithmetic operations, sqrt, exp, log, sin, cos and pow.
 */

#include <cmath>
#include <cstdint>
#include <limits>

namespace feigen {

class DoubleDouble {
public:
    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double v) : hi_(v), lo_(0.0) {}  // NOLINT(implicit)
    constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    [[nodiscard]] constexpr double hi() const { return hi_; }
    [[nodiscard]] constexpr double lo() const { return lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }

    friend DoubleDouble operator-(DoubleDouble a) { return {-a.hi_, -a.lo_}; }

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
        Pair s = two_sum(a.hi_, b.hi_);
        const Pair t = two_sum(a.lo_, b.lo_);
        s.e += t.s;
        s = quick_two_sum(s.s, s.e);
        s.e += t.e;
        return from_pair(quick_two_sum(s.s, s.e));
    }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
        Pair p = two_prod(a.hi_, b.hi_);
        p.e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        return from_pair(quick_two_sum(p.s, p.e));
    }

    friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
        // Two rounds of long division.
        const double q1 = a.hi_ / b.hi_;
        DoubleDouble r = a - b * DoubleDouble(q1);
        const double q2 = r.hi_ / b.hi_;
        r = r - b * DoubleDouble(q2);
        const double q3 = r.hi_ / b.hi_;
        DoubleDouble q = from_pair(quick_two_sum(q1, q2));
        return q + DoubleDouble(q3);
    }

    DoubleDouble& operator+=(DoubleDouble o) { return *this = *this + o; }
    DoubleDouble& operator-=(DoubleDouble o) { return *this = *this - o; }
    DoubleDouble& operator*=(DoubleDouble o) { return *this = *this * o; }
    DoubleDouble& operator/=(DoubleDouble o) { return *this = *this / o; }

    friend bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
    friend bool operator<(DoubleDouble a, DoubleDouble b) {
        return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
    }
    friend bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
    friend bool operator<=(DoubleDouble a, DoubleDouble b) { return !(b < a); }
    friend bool operator>=(DoubleDouble a, DoubleDouble b) { return !(a < b); }

    static constexpr DoubleDouble pi() { return {3.141592653589793116, 1.2246467991473532072e-16}; }
    static constexpr DoubleDouble e() { return {2.718281828459045091, 1.4456468917292501578e-16}; }
    static constexpr DoubleDouble ln2() { return {0.6931471805599452862, 2.3190468138462995584e-17}; }

private:
    struct Pair {
        double s, e;
    };
    static constexpr Pair quick_two_sum(double a, double b) {
        const double s = a + b;
        return {s, b - (s - a)};
    }
    static constexpr Pair two_sum(double a, double b) {
        const double s = a + b;
        const double bb = s - a;
        return {s, (a - (s - bb)) + (b - bb)};
    }
    static Pair two_prod(double a, double b) {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }
    static constexpr DoubleDouble from_pair(Pair p) { return {p.s, p.e}; }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

inline double to_double(double v) { return v; }
inline double to_double(DoubleDouble v) { return static_cast<double>(v); }

inline DoubleDouble abs(DoubleDouble a) { return a.hi() < 0.0 ? -a : a; }
inline bool isfinite(DoubleDouble a) { return std::isfinite(a.hi()) && std::isfinite(a.lo()); }

inline DoubleDouble ldexp(DoubleDouble a, int k) { return {std::ldexp(a.hi(), k), std::ldexp(a.lo(), k)}; }

inline DoubleDouble sqrt(DoubleDouble a) {
    if (a.hi() <= 0.0) return DoubleDouble(std::sqrt(a.hi()));
    // One Newton step on the double estimate doubles the precision.
    const double y = std::sqrt(a.hi());
    const DoubleDouble yy(y);
    return yy + (a - yy * yy) / DoubleDouble(2.0 * y);
}

inline DoubleDouble exp(DoubleDouble a) {
    if (a.hi() > 709.0) return DoubleDouble(std::numeric_limits<double>::infinity());
    if (a.hi() < -745.0) return DoubleDouble(0.0);
    const double k = std::nearbyint(a.hi() / DoubleDouble::ln2().hi());
    DoubleDouble r = a - DoubleDouble::ln2() * DoubleDouble(k);
    // exp(r) = exp(r / 2^10)^(2^10)
    constexpr int squarings = 10;
    r = ldexp(r, -squarings);
    DoubleDouble term(1.0);
    DoubleDouble sum(1.0);
    for (int n = 1; n <= 14; ++n) {
        term = term * r / DoubleDouble(static_cast<double>(n));
        sum += term;
        if (std::fabs(term.hi()) < 1e-34) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return ldexp(sum, static_cast<int>(k));
}

inline DoubleDouble log(DoubleDouble a) {
    if (a.hi() <= 0.0) return DoubleDouble(std::log(a.hi()));
    // Newton on exp(y) = a from the double estimate.
    DoubleDouble y(std::log(a.hi()));
    y = y + a * exp(-y) - DoubleDouble(1.0);
    return y;
}

namespace detail {

// sin and cos of |r| <= pi/4 by Taylor series.
inline DoubleDouble sin_taylor(DoubleDouble r) {
    const DoubleDouble r2 = r * r;
    DoubleDouble term = r;
    DoubleDouble sum = r;
    for (int n = 1; n <= 14; ++n) {
        term = -term * r2 / DoubleDouble(static_cast<double>((2 * n) * (2 * n + 1)));
        sum += term;
        if (std::fabs(term.hi()) < 1e-34) break;
    }
    return sum;
}

inline DoubleDouble cos_taylor(DoubleDouble r) {
    const DoubleDouble r2 = r * r;
    DoubleDouble term(1.0);
    DoubleDouble sum(1.0);
    for (int n = 1; n <= 14; ++n) {
        term = -term * r2 / DoubleDouble(static_cast<double>((2 * n - 1) * (2 * n)));
        sum += term;
        if (std::fabs(term.hi()) < 1e-34) break;
    }
    return sum;
}

// Reduces a to r + j*pi/2 with |r| <= pi/4; returns j mod 4.
inline int reduce_quarter_pi(DoubleDouble a, DoubleDouble& r) {
    const DoubleDouble half_pi = ldexp(DoubleDouble::pi(), -1);
    const double j = std::nearbyint(a.hi() / half_pi.hi());
    r = a - half_pi * DoubleDouble(j);
    const auto jm = static_cast<std::int64_t>(std::fmod(j, 4.0));
    return static_cast<int>((jm + 4) % 4);
}

}  // namespace detail

inline DoubleDouble sin(DoubleDouble a) {
    DoubleDouble r;
    switch (detail::reduce_quarter_pi(a, r)) {
        case 0: return detail::sin_taylor(r);
        case 1: return detail::cos_taylor(r);
        case 2: return -detail::sin_taylor(r);
        default: return -detail::cos_taylor(r);
    }
}

inline DoubleDouble cos(DoubleDouble a) {
    DoubleDouble r;
    switch (detail::reduce_quarter_pi(a, r)) {
        case 0: return detail::cos_taylor(r);
        case 1: return -detail::sin_taylor(r);
        case 2: return -detail::cos_taylor(r);
        default: return detail::sin_taylor(r);
    }
}

// Integer powers by repeated squaring; negative bases allowed.
inline DoubleDouble pow_int(DoubleDouble base, long long n) {
    if (n < 0) return DoubleDouble(1.0) / pow_int(base, -n);
    DoubleDouble result(1.0);
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

inline DoubleDouble pow(DoubleDouble base, DoubleDouble p) {
    const double pd = static_cast<double>(p);
    if (p.lo() == 0.0 && std::nearbyint(pd) == pd && std::fabs(pd) < 1e6)
        return pow_int(base, static_cast<long long>(pd));
    return exp(p * log(base));
}

}  // namespace feigen
