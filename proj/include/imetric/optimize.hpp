#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace imetric {

/// Golden-section minimization of f on [a, b]. Assumes f is unimodal on the
/// bracket; returns (argmin, min). `tol` is an absolute parameter tolerance.
template <class F>
std::pair<double, double> golden_section_min(F&& f, double a, double b, double tol = 1e-10,
                                             int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double tol = 1e-10,
                                             int max_iter = 200) {
    auto neg = [&](double x) { return -f(x); };
    auto [x, v] = golden_section_min(neg, a, b, tol, max_iter);
    return {x, -v};
}

/// Coarse scan of f over `cells` equal cells of [a, b] followed by
/// golden-section refinement on the bracketing interval.
template <class F>
std::pair<double, double> scan_then_golden_min(F&& f, double a, double b, std::size_t cells,
                                               double tol = 1e-10) {
    double best_x = a;
    double best_v = f(a);
    const double h = (b - a) / static_cast<double>(cells);
    for (std::size_t i = 1; i <= cells; ++i) {
        const double x = (i == cells) ? b : a + h * static_cast<double>(i);
        const double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double lo = std::max(a, best_x - h);
    const double hi = std::min(b, best_x + h);
    auto [x, v] = golden_section_min(f, lo, hi, tol);
    return v < best_v ? std::make_pair(x, v) : std::make_pair(best_x, best_v);
}

} // namespace imetric
