#pragma once

#include <cmath>
#include <complex>

namespace argvar {

using Cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Second-order jet (value, first and second derivative) of a holomorphic
/// function at a point. Arithmetic propagates derivatives exactly.
struct Jet2 {
    Cx v{};
    Cx d1{};
    Cx d2{};

    static Jet2 constant(Cx c) { return {c, 0.0, 0.0}; }
    static Jet2 coordinate(Cx z) { return {z, 1.0, 0.0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

// caller checks b.v != 0
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    Cx qv = a.v / b.v;
    Cx qd1 = (a.d1 - qv * b.d1) / b.v;
    Cx qd2 = (a.d2 - 2.0 * qd1 * b.d1 - qv * b.d2) / b.v;
    return {qv, qd1, qd2};
}

inline Jet2 jet_exp(const Jet2& u) {
    Cx e = std::exp(u.v);
    return {e, e * u.d1, e * (u.d1 * u.d1 + u.d2)};
}

/// Principal log shifted by an integer branch offset; caller checks u.v != 0.
inline Jet2 jet_log(const Jet2& u, int branch = 0) {
    Cx lv = std::log(u.v) + Cx(0.0, kTwoPi * branch);
    Cx l1 = u.d1 / u.v;
    return {lv, l1, u.d2 / u.v - l1 * l1};
}

inline Jet2 jet_ipow(const Jet2& u, int n) {
    if (n == 0) return Jet2::constant(1.0);
    // binary power on the jet itself keeps rounding comparable to pow
    Jet2 acc = Jet2::constant(1.0);
    Jet2 base = u;
    int e = n;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// Jet of f∘g given jets of f at g(z) and g at z.
inline Jet2 jet_compose(const Jet2& f_at_gv, const Jet2& g) {
    return {f_at_gv.v, f_at_gv.d1 * g.d1,
            f_at_gv.d2 * g.d1 * g.d1 + f_at_gv.d1 * g.d2};
}

}  // namespace argvar
