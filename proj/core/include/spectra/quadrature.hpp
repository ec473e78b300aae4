#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include "spectra/series.hpp"

namespace spectra {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss-7 weights attached to nodes 1, 3, 5, 7 above.
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F, class T>
void gk15(F&& f, double a, double b, T& k15, double& err, double& l1) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T fc = f(mid);
    T g7 = kG7Weights[3] * fc;
    k15 = kGK15Weights[7] * fc;
    l1 = kGK15Weights[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGK15Nodes[i];
        T fp = f(mid + dx);
        T fm = f(mid - dx);
        T fsum = fp + fm;
        k15 += kGK15Weights[i] * fsum;
        l1 += kGK15Weights[i] * (std::abs(fp) + std::abs(fm));
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * fsum;
    }
    g7 *= half;
    k15 *= half;
    l1 *= half;
    double d = std::abs(k15 - g7);
    err = std::min(d, std::pow(200.0 * d, 1.5));
}

template <class F, class T>
T adapt(F&& f, double a, double b, double tol, int depth, double* achieved) {
    T val;
    double err, l1;
    gk15(f, a, b, val, err, l1);
    // The panel's roundoff floor; demanding less than this recurses forever.
    const double floor = 5e-15 * l1;
    if (err <= std::max(tol, floor) || depth <= 0) {
        if (achieved) *achieved += err;
        if (depth <= 0 && err > 100.0 * std::max(tol, floor))
            throw QuadratureError("adaptive quadrature failed to meet tolerance");
        return val;
    }
    const double mid = 0.5 * (a + b);
    return adapt<F, T>(std::forward<F>(f), a, mid, 0.5 * tol, depth - 1, achieved) +
           adapt<F, T>(std::forward<F>(f), mid, b, 0.5 * tol, depth - 1, achieved);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a real- or complex-valued
/// integrand over [a, b].  `tol` is an absolute tolerance.
template <class F>
auto integrate(F&& f, double a, double b, double tol, int max_depth = 40)
    -> std::invoke_result_t<F, double> {
    using T = std::invoke_result_t<F, double>;
    if (a == b) return T{};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    double achieved = 0.0;
    T v = detail::adapt<F, T>(std::forward<F>(f), a, b, tol, max_depth, &achieved);
    return sign * v;
}

/// Integration of f(x) whose dominant oscillation is e^{i t x}: the range
/// is pre-split into panels no wider than pi/(4|t|) before adapting.
template <class F>
auto integrate_oscillatory(F&& f, double a, double b, double t, double tol)
    -> std::invoke_result_t<F, double> {
    using T = std::invoke_result_t<F, double>;
    if (a == b) return T{};
    double width = b - a;
    int panels = 1;
    if (std::abs(t) > 1.0) {
        double w = 3.14159265358979323846 / (4.0 * std::abs(t));
        panels = std::max(1, static_cast<int>(std::ceil(width / w)));
    }
    T total{};
    double h = width / panels;
    for (int i = 0; i < panels; ++i)
        total += integrate(f, a + i * h, a + (i + 1) * h, tol / panels);
    return total;
}

}  // namespace spectra
