#pragma once

#include <cmath>
#include <functional>

// Independent quadrature oracle for density checks. Deliberately self-contained:
// it must not share code with the implementation it verifies.
namespace testutil {

namespace detail {

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson integration of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int depth = 55) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Integral of f over the whole real line via the substitution z = tan(u),
/// which keeps slowly decaying tails (the fat-tailed densities here fall off
/// like z^-4) inside a finite, well-behaved window.
inline double integrate_real_line(const std::function<double(double)>& f,
                                  double tol = 1e-10) {
    auto transformed = [&](double u) {
        const double c = std::cos(u);
        return f(std::tan(u)) / (c * c);
    };
    const double edge = std::asin(1.0) - 1e-9; // pi/2 minus a hair
    return integrate(transformed, -edge, edge, tol);
}

} // namespace testutil
