#pragma once

#include <cmath>
#include <functional>

namespace argvar::quad {

namespace detail {

inline double simpson(const std::function<double(double)>& f, double a,
                      double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double fm, double whole, double tol,
                    int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, flm);
    double right = simpson(f, m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f on [a,b]. An initial uniform split keeps
/// oscillatory integrands from fooling the error estimate.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-10,
                               int initial_splits = 8, int max_depth = 40) {
    double total = 0.0;
    double h = (b - a) / initial_splits;
    for (int i = 0; i < initial_splits; ++i) {
        double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
        double f0 = f(x0), f1 = f(x1), fm = f(xm);
        double whole = detail::simpson(f, x0, f0, x1, f1, fm);
        total += detail::adapt(f, x0, f0, x1, f1, fm, whole,
                               tol / initial_splits, max_depth);
    }
    return total;
}

}  // namespace argvar::quad
