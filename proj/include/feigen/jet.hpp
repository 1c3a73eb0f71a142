#pragma once

// Third-order Taylor jets in one variable.

#include <cmath>

#include "double_double.hpp"

namespace feigen {

template <class T>
struct Jet3 {
    T f{};
    T f1{};
    T f2{};
    T f3{};

    static Jet3 constant(T v) { return {v, T(0.0), T(0.0), T(0.0)}; }
    static Jet3 variable(T v) { return {v, T(1.0), T(0.0), T(0.0)}; }

    // g(u) for a scalar function with derivatives g0..g3 evaluated at u.f.
    [[nodiscard]] Jet3 compose(T g0, T g1, T g2, T g3) const {
        const T u1sq = f1 * f1;
        return {g0,
                g1 * f1,
                g2 * u1sq + g1 * f2,
                g3 * u1sq * f1 + T(3.0) * g2 * f1 * f2 + g1 * f3};
    }

    friend Jet3 operator+(const Jet3& u, const Jet3& v) { return {u.f + v.f, u.f1 + v.f1, u.f2 + v.f2, u.f3 + v.f3}; }
    friend Jet3 operator-(const Jet3& u, const Jet3& v) { return {u.f - v.f, u.f1 - v.f1, u.f2 - v.f2, u.f3 - v.f3}; }
    friend Jet3 operator-(const Jet3& u) { return {-u.f, -u.f1, -u.f2, -u.f3}; }
    friend Jet3 operator*(const Jet3& u, const Jet3& v) {
        return {u.f * v.f,
                u.f1 * v.f + u.f * v.f1,
                u.f2 * v.f + T(2.0) * u.f1 * v.f1 + u.f * v.f2,
                u.f3 * v.f + T(3.0) * (u.f2 * v.f1 + u.f1 * v.f2) + u.f * v.f3};
    }
    // Caller guarantees v.f != 0.
    friend Jet3 operator/(const Jet3& u, const Jet3& v) {
        const T r = T(1.0) / v.f;
        const T r2 = r * r;
        return u * v.compose(r, -r2, T(2.0) * r2 * r, T(-6.0) * r2 * r2);
    }
};

// Composition of two jets: (g o u) where g is expanded at u.f.
template <class T>
Jet3<T> chain(const Jet3<T>& g, const Jet3<T>& u) {
    return u.compose(g.f, g.f1, g.f2, g.f3);
}

}  // namespace feigen
