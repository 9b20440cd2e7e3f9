#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "imetric/domain.hpp"
#include "imetric/optimize.hpp"
#include "imetric/point.hpp"

namespace imetric {

/// th(rho_G(x,y)/2) for the half-space and ball hyperbolic metrics.
///
/// Both cases reduce to r / sqrt(r^2 + P) with r = |x-y| and
///   half-space: P = 4 d(x) d(y)
///   unit ball:  P = (1-|x|^2)(1-|y|^2), written d(2-d) in the boundary distances
/// which is the ch/sh definition rearranged so that the boundary distances
/// enter exactly as they do in the mean-value metrics.
inline double hyperbolic_th_half(const Domain& domain, const Point& x, const Point& y) {
    if (domain.kind() == DomainKind::punctured_space)
        throw std::invalid_argument("hyperbolic metric is defined on half_space and unit_ball only");
    if (x == y) {
        domain.require_inside(x);
        return 0.0;
    }
    const double dx = domain.dist_to_boundary(x);
    const double dy = domain.dist_to_boundary(y);
    const double r2 = squared_dist(x, y);
    // grouped so that swapping x and y reproduces the identical value bit for bit
    double p = 0.0;
    if (domain.kind() == DomainKind::half_space)
        p = 4.0 * (dx * dy);
    else
        p = (dx * (2.0 - dx)) * (dy * (2.0 - dy));
    return std::sqrt(r2 / (r2 + p));
}

/// rho_G(x,y) = 2 artanh(th(rho/2)).
inline double hyperbolic_dist(const Domain& domain, const Point& x, const Point& y) {
    return 2.0 * std::atanh(hyperbolic_th_half(domain, x, y));
}

namespace detail {

// Reduced 2D configuration for the ball: x' = (r1, 0), y' at radius r2 with
// the original chord length. cos(angle) is clamped against rounding; a value
// genuinely outside [-1,1] means the inputs were not a valid ball pair.
inline std::pair<Point, Point> reduce_ball(double r1, double r2, double chord2) {
    if (r1 == 0.0 || r2 == 0.0) return {Point{r1, 0.0}, Point{r2, 0.0}};
    double ct = (r1 * r1 + r2 * r2 - chord2) / (2.0 * r1 * r2);
    if (ct > 1.0 + 1e-9 || ct < -1.0 - 1e-9)
        throw std::logic_error("reduce_to_plane: no planar realization");
    ct = std::min(1.0, std::max(-1.0, ct));
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    return {Point{r1, 0.0}, Point{r2 * ct, r2 * st}};
}

} // namespace detail

/// Maps a pair in H^n or B^n to a planar pair with the same |x-y|, d(x), d(y).
/// Every metric in this library depends on those three numbers only, so the
/// reduced pair is interchangeable with the original.
inline std::pair<Point, Point> reduce_to_plane(const Domain& domain, const Point& x, const Point& y) {
    domain.require_inside(x);
    domain.require_inside(y);
    const double chord2 = squared_dist(x, y);
    switch (domain.kind()) {
        case DomainKind::half_space: {
            const double hx = x[x.dim() - 1];
            const double hy = y[y.dim() - 1];
            const double w2 = chord2 - (hx - hy) * (hx - hy);
            if (w2 < -1e-9 * chord2)
                throw std::logic_error("reduce_to_plane: no planar realization");
            return {Point{0.0, hx}, Point{std::sqrt(std::max(0.0, w2)), hy}};
        }
        case DomainKind::unit_ball:
            return detail::reduce_ball(norm(x), norm(y), chord2);
        case DomainKind::punctured_space:
            throw std::invalid_argument("reduce_to_plane: half_space or unit_ball required");
    }
    throw std::logic_error("reduce_to_plane: unreachable");
}

/// Triangular ratio s_G(x,y) = |x-y| / inf_z (|x-z| + |z-y|) over boundary z.
///
/// The infimum is closed-form for the punctured space (through the origin)
/// and for the half-space (reflection across the boundary hyperplane); for
/// the ball it is found numerically on the boundary circle of the reduced
/// planar configuration (1024-cell scan, then golden section to 1e-10).
inline double triangular_ratio(const Domain& domain, const Point& x, const Point& y) {
    if (x == y) {
        domain.require_inside(x);
        return 0.0;
    }
    domain.require_inside(x);
    domain.require_inside(y);
    switch (domain.kind()) {
        case DomainKind::punctured_space:
            return dist(x, y) / (norm(x) + norm(y));
        case DomainKind::half_space: {
            const std::size_t n = x.dim();
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double d = x[i] - y[i];
                s += d * d;
            }
            const double sum_h = x[n - 1] + y[n - 1];
            return dist(x, y) / std::sqrt(s + sum_h * sum_h);
        }
        case DomainKind::unit_ball: {
            const auto reduced = reduce_to_plane(domain, x, y);
            const Point& a = reduced.first;
            const Point& b = reduced.second;
            auto path = [&a, &b](double t) {
                const Point z{std::cos(t), std::sin(t)};
                return dist(a, z) + dist(z, b);
            };
            constexpr double two_pi = 6.283185307179586;
            auto [t_min, len] = scan_then_golden_min(path, 0.0, two_pi, 1024, 1e-10);
            (void)t_min;
            return dist(a, b) / len;
        }
    }
    throw std::logic_error("triangular_ratio: unreachable");
}

} // namespace imetric
