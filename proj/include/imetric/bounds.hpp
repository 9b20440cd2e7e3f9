#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "imetric/geometry.hpp"
#include "imetric/harness.hpp"
#include "imetric/means.hpp"
#include "imetric/metrics.hpp"
#include "imetric/optimize.hpp"
#include "imetric/parallel.hpp"

namespace imetric {

/// The four comparison cases between a th-form family member and th(rho/2),
/// one per (domain, mean) combination, keyed on the CLI by T5.2/T5.3/T5.5/T5.6.
enum class BoundCase { arith_half_plane, arith_ball, logmean_half_plane, logmean_ball };

inline const char* to_string(BoundCase b) {
    switch (b) {
        case BoundCase::arith_half_plane: return "T5.2";
        case BoundCase::arith_ball: return "T5.3";
        case BoundCase::logmean_half_plane: return "T5.5";
        case BoundCase::logmean_ball: return "T5.6";
    }
    return "?";
}

inline BoundCase parse_bound_case(std::string_view id) {
    if (id == "T5.2") return BoundCase::arith_half_plane;
    if (id == "T5.3") return BoundCase::arith_ball;
    if (id == "T5.5") return BoundCase::logmean_half_plane;
    if (id == "T5.6") return BoundCase::logmean_ball;
    throw std::invalid_argument("unknown bound case \"" + std::string(id) + "\"");
}

inline bool is_ball_case(BoundCase b) {
    return b == BoundCase::arith_ball || b == BoundCase::logmean_ball;
}

inline bool is_logmean_case(BoundCase b) {
    return b == BoundCase::logmean_half_plane || b == BoundCase::logmean_ball;
}

inline Domain bound_domain(BoundCase b) {
    return is_ball_case(b) ? Domain::unit_ball(2) : Domain::half_space(2);
}

inline MetricSpec bound_metric(BoundCase b, double c) {
    return {is_logmean_case(b) ? MeanKind::logarithmic() : MeanKind::arithmetic(), c,
            MetricForm::th};
}

/// Sharp or valid comparison constants: lower * th(rho/2) <= metric <= upper * th(rho/2).
inline double expected_lower_constant(BoundCase b, double c) {
    return is_ball_case(b) ? std::min(1.0 / (2.0 * c), 1.0 / (1.0 + c)) : 1.0 / (1.0 + c);
}

inline double expected_upper_constant(double c) { return std::max(1.0, 1.0 / c); }

// ---------------------------------------------------------------------------
// Quotient functions (metric value / th(rho/2)) in reduced coordinates
// ---------------------------------------------------------------------------
//
// Half-plane cases place the pair at x = (k, h), y = (0, 1) with k >= 0 and
// 0 < h <= 1. Ball cases place x = (r1, 0) and y at radius r2 <= r1 with
// t = cos(angle between them). Each quotient extends continuously to the
// coincidence corner ((k,h) = (0,1); r1 = r2, t = 1), where it equals 1/c.

namespace detail {

inline void check_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("quotient: c must be positive");
}

inline void check_half_plane_params(double k, double h) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("quotient: k must be >= 0");
    if (!(h > 0.0) || !(h <= 1.0)) throw std::invalid_argument("quotient: h must be in (0, 1]");
}

inline void check_ball_params(double r1, double r2, double t) {
    if (!(r1 >= 0.0) || !(r1 < 1.0)) throw std::invalid_argument("quotient: r1 must be in [0, 1)");
    if (!(r2 >= 0.0) || !(r2 <= r1)) throw std::invalid_argument("quotient: r2 must be in [0, r1]");
    if (!(t >= -1.0) || !(t <= 1.0)) throw std::invalid_argument("quotient: t must be in [-1, 1]");
}

// |1 - x conj(y)|^2 and |x - y|^2 written as sums of nonnegative terms, so
// the t -> 1, r1 -> r2 corner carries no cancellation.
inline double ball_numerator(double r1, double r2, double t) {
    const double p = r1 * r2;
    return std::sqrt((1.0 - p) * (1.0 - p) + 2.0 * p * (1.0 - t));
}

inline double ball_chord(double r1, double r2, double t) {
    const double d = r1 - r2;
    return std::sqrt(d * d + 2.0 * r1 * r2 * (1.0 - t));
}

} // namespace detail

inline double arith_quotient_half_plane(double c, double k, double h) {
    detail::check_c(c);
    detail::check_half_plane_params(k, h);
    const double num = std::sqrt(k * k + (h + 1.0) * (h + 1.0));
    const double den = std::sqrt(k * k + (h - 1.0) * (h - 1.0)) + c * (h + 1.0);
    return num / den;
}

inline double log_quotient_half_plane(double c, double k, double h) {
    detail::check_c(c);
    detail::check_half_plane_params(k, h);
    const double num = std::sqrt(k * k + (h + 1.0) * (h + 1.0));
    const double den = std::sqrt(k * k + (h - 1.0) * (h - 1.0)) + 2.0 * c * mean(MeanKind::logarithmic(), h, 1.0);
    return num / den;
}

inline double arith_quotient_ball(double c, double r1, double r2, double t) {
    detail::check_c(c);
    detail::check_ball_params(r1, r2, t);
    return detail::ball_numerator(r1, r2, t) /
           (detail::ball_chord(r1, r2, t) + c * (2.0 - r1 - r2));
}

inline double log_quotient_ball(double c, double r1, double r2, double t) {
    detail::check_c(c);
    detail::check_ball_params(r1, r2, t);
    return detail::ball_numerator(r1, r2, t) /
           (detail::ball_chord(r1, r2, t) + 2.0 * c * mean(MeanKind::logarithmic(), 1.0 - r1, 1.0 - r2));
}

/// Quotient of BoundCase `b` at a reduced parameter point (2 or 3 coordinates).
inline double bound_quotient(BoundCase b, double c, std::span<const double> p) {
    switch (b) {
        case BoundCase::arith_half_plane: return arith_quotient_half_plane(c, p[0], p[1]);
        case BoundCase::logmean_half_plane: return log_quotient_half_plane(c, p[0], p[1]);
        case BoundCase::arith_ball: return arith_quotient_ball(c, p[0], p[1], p[2]);
        case BoundCase::logmean_ball: return log_quotient_ball(c, p[0], p[1], p[2]);
    }
    throw std::logic_error("bound_quotient: unreachable");
}

/// Planar pair realizing a reduced parameter point.
inline std::pair<Point, Point> bound_points(BoundCase b, std::span<const double> p) {
    if (is_ball_case(b)) {
        const double r1 = p[0], r2 = p[1], t = p[2];
        return {Point{r1, 0.0}, Point{r2 * t, r2 * std::sqrt(std::max(0.0, 1.0 - t * t))}};
    }
    return {Point{p[0], p[1]}, Point{0.0, 1.0}};
}

// ---------------------------------------------------------------------------
// Extremum search over the clamped parameter boxes
// ---------------------------------------------------------------------------

struct ParamRecord {
    std::vector<std::pair<std::string, double>> values;
};

struct ExtremaResult {
    double inf = 0.0;
    double sup = 0.0;
    ParamRecord arg_inf;
    ParamRecord arg_sup;
};

namespace detail {

// Search boxes. The comparison constants are approached only in boundary
// limits, so the box is clamped 1e-6 inside the open set.
struct Axis {
    std::string name;
    double lo = 0.0, hi = 0.0;
    bool log_spaced = false;
    bool include_zero = false; // prepend an exact 0 before the log ramp

    std::size_t count(std::size_t res) const {
        if (res <= 1) return 1;
        return include_zero ? res + 1 : res;
    }

    double value(std::size_t i, std::size_t res) const {
        if (res <= 1) return include_zero ? 0.0 : lo;
        if (include_zero) {
            if (i == 0) return 0.0;
            --i;
        }
        const double f = static_cast<double>(i) / static_cast<double>(res - 1);
        if (log_spaced) return std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
        return lo + f * (hi - lo);
    }

    double floor_value() const { return include_zero ? 0.0 : lo; }
};

inline std::vector<Axis> bound_axes(BoundCase b) {
    if (is_ball_case(b))
        return {{"r1", 0.0, 1.0 - 1e-6, false, false},
                {"r2", 0.0, 1.0 - 1e-6, false, false},
                {"t", -1.0, 1.0, false, false}};
    return {{"k", 1e-6, 1e6, true, true}, {"h", 1e-6, 1.0 - 1e-6, false, false}};
}

struct GridAccum {
    double min_v = std::numeric_limits<double>::infinity();
    double max_v = -std::numeric_limits<double>::infinity();
    std::uint64_t min_i = 0, max_i = 0;

    void record(double v, std::uint64_t i) {
        if (v < min_v || (v == min_v && i < min_i)) {
            min_v = v;
            min_i = i;
        }
        if (v > max_v || (v == max_v && i < max_i)) {
            max_v = v;
            max_i = i;
        }
    }

    void merge(const GridAccum& o) {
        if (o.min_v < min_v || (o.min_v == min_v && o.min_i < min_i)) {
            min_v = o.min_v;
            min_i = o.min_i;
        }
        if (o.max_v > max_v || (o.max_v == max_v && o.max_i < max_i)) {
            max_v = o.max_v;
            max_i = o.max_i;
        }
    }
};

inline std::vector<double> grid_point(const std::vector<Axis>& axes, std::size_t res,
                                      std::uint64_t index) {
    std::vector<double> p(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        const std::size_t cnt = axes[a].count(res);
        p[a] = axes[a].value(static_cast<std::size_t>(index % cnt), res);
        index /= cnt;
    }
    return p;
}

// Coordinate-wise golden-section polish around a grid optimum. The bracket
// starts at one grid cell per coordinate and shrinks between sweeps.
template <class F>
std::pair<std::vector<double>, double> refine_coordinatewise(F&& f, const std::vector<Axis>& axes,
                                                             std::vector<double> x,
                                                             std::size_t res, bool maximize) {
    double fx = f(x);
    const int sweeps = 8;
    std::vector<double> width(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) {
        if (axes[a].log_spaced) {
            const double ratio =
                res > 1 ? std::exp((std::log(axes[a].hi) - std::log(axes[a].lo)) /
                                   static_cast<double>(res - 1))
                        : 2.0;
            width[a] = std::max(x[a] * (ratio - 1.0), axes[a].lo);
        } else {
            width[a] = res > 1 ? (axes[a].hi - axes[a].lo) / static_cast<double>(res - 1)
                               : (axes[a].hi - axes[a].lo);
        }
    }
    for (int s = 0; s < sweeps; ++s) {
        for (std::size_t a = 0; a < axes.size(); ++a) {
            double lo = std::max(axes[a].floor_value(), x[a] - width[a]);
            double hi = std::min(axes[a].hi, x[a] + width[a]);
            // keep r2 <= r1 when moving either radius of a ball case
            if (axes[a].name == "r1") lo = std::max(lo, x[a + 1]);
            if (axes[a].name == "r2") hi = std::min(hi, x[a - 1]);
            if (!(hi > lo)) continue;
            auto slice = [&](double v) {
                auto y = x;
                y[a] = v;
                const double fv = f(y);
                return maximize ? -fv : fv;
            };
            auto [best_v, best_f] = golden_section_min(slice, lo, hi, 1e-10);
            const double cand = maximize ? -best_f : best_f;
            if (maximize ? cand > fx : cand < fx) {
                x[a] = best_v;
                fx = cand;
            }
            width[a] *= 0.5;
        }
    }
    return {x, fx};
}

} // namespace detail

/// Extrema of a comparison quotient over its clamped parameter box: coarse
/// grid scan with `resolution` points per axis, then (optionally) coordinate
/// golden-section refinement from the best cells.
inline ExtremaResult find_extrema(BoundCase which, double c, std::size_t resolution, bool refine) {
    if (resolution < 1) throw std::invalid_argument("find_extrema: resolution must be >= 1");
    const auto axes = detail::bound_axes(which);
    const bool ball = is_ball_case(which);

    std::uint64_t total = 1;
    for (const auto& ax : axes) total *= ax.count(resolution);

    // stack buffer in the hot path; the grid can run to 1e9 cells
    auto value_at = [&](std::uint64_t index) -> std::pair<bool, double> {
        std::array<double, 3> buf{};
        std::uint64_t rest = index;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const std::size_t cnt = axes[a].count(resolution);
            buf[a] = axes[a].value(static_cast<std::size_t>(rest % cnt), resolution);
            rest /= cnt;
        }
        if (ball && buf[1] > buf[0]) return {false, 0.0};
        return {true, bound_quotient(which, c, std::span<const double>(buf.data(), axes.size()))};
    };

    detail::GridAccum acc = parallel_reduce(
        total, detail::GridAccum{},
        [&](detail::GridAccum& a, std::uint64_t i) {
            const auto [ok, v] = value_at(i);
            if (ok) a.record(v, i);
        },
        [](detail::GridAccum& a, const detail::GridAccum& b) { a.merge(b); });

    auto arg_min = detail::grid_point(axes, resolution, acc.min_i);
    auto arg_max = detail::grid_point(axes, resolution, acc.max_i);
    double inf_v = acc.min_v;
    double sup_v = acc.max_v;

    if (refine) {
        auto f = [&](const std::vector<double>& p) { return bound_quotient(which, c, p); };
        auto [xi, vi] = detail::refine_coordinatewise(f, axes, arg_min, resolution, false);
        auto [xs, vs] = detail::refine_coordinatewise(f, axes, arg_max, resolution, true);
        if (vi < inf_v) {
            inf_v = vi;
            arg_min = xi;
        }
        if (vs > sup_v) {
            sup_v = vs;
            arg_max = xs;
        }
    }

    ExtremaResult res{inf_v, sup_v, {}, {}};
    for (std::size_t a = 0; a < axes.size(); ++a) {
        res.arg_inf.values.emplace_back(axes[a].name, arg_min[a]);
        res.arg_sup.values.emplace_back(axes[a].name, arg_max[a]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

struct BoundReport {
    BoundCase which = BoundCase::arith_half_plane;
    double c = 1.0;
    double tol = 5e-3;
    double inf_expected = 0.0, sup_expected = 0.0;
    double inf_found = 0.0, sup_found = 0.0;
    ParamRecord arg_inf, arg_sup;
    bool lower_holds = false;        // inf_found >= inf_expected - tol
    bool upper_holds = false;        // sup_found <= sup_expected + tol
    bool lower_sharp_asserted = false;
    bool lower_sharp = false;        // |inf_found - inf_expected| <= tol
    bool upper_sharp = false;        // |sup_found - sup_expected| <= tol
    bool tolerance_met = false;
};

/// Compares found extrema with the expected constants. Sharpness of the
/// lower constant is asserted for the arithmetic cases only; the log-mean
/// cases claim sharpness of the upper constant alone.
inline BoundReport verify_theorem_bounds(BoundCase which, double c, double tol,
                                         std::size_t resolution = 0, bool refine = true) {
    if (!(tol > 0.0)) throw std::invalid_argument("verify_theorem_bounds: tol must be positive");
    if (resolution == 0) resolution = is_ball_case(which) ? 256 : 1024;
    const ExtremaResult ex = find_extrema(which, c, resolution, refine);

    BoundReport rep;
    rep.which = which;
    rep.c = c;
    rep.tol = tol;
    rep.inf_expected = expected_lower_constant(which, c);
    rep.sup_expected = expected_upper_constant(c);
    rep.inf_found = ex.inf;
    rep.sup_found = ex.sup;
    rep.arg_inf = ex.arg_inf;
    rep.arg_sup = ex.arg_sup;
    rep.lower_holds = rep.inf_found >= rep.inf_expected - tol;
    rep.upper_holds = rep.sup_found <= rep.sup_expected + tol;
    rep.lower_sharp_asserted = !is_logmean_case(which);
    rep.lower_sharp = std::fabs(rep.inf_found - rep.inf_expected) <= tol;
    rep.upper_sharp = std::fabs(rep.sup_found - rep.sup_expected) <= tol;
    rep.tolerance_met = rep.lower_holds && rep.upper_holds && rep.upper_sharp &&
                        (!rep.lower_sharp_asserted || rep.lower_sharp);
    return rep;
}

struct EnvelopeCount {
    std::uint64_t lower_violations = 0;
    std::uint64_t upper_violations = 0;
    std::uint64_t samples = 0;
};

/// Pointwise restatement of the comparison theorems on random pairs:
/// lower * th(rho/2) - 1e-9 <= metric <= upper * th(rho/2) + 1e-9.
inline EnvelopeCount envelope_check(BoundCase which, double c, std::uint64_t n,
                                    std::uint64_t seed) {
    const Domain domain = bound_domain(which);
    const MetricSpec spec = bound_metric(which, c);
    const double lower = expected_lower_constant(which, c);
    const double upper = expected_upper_constant(c);

    struct Acc {
        std::uint64_t lo = 0, up = 0;
    };
    Acc acc = parallel_reduce(
        n, Acc{},
        [&](Acc& a, std::uint64_t i) {
            Rng rng(seed, i);
            const Point x = sample_point(domain, rng);
            const Point y = sample_point(domain, rng);
            const double th = hyperbolic_th_half(domain, x, y);
            const double v = eval(spec, domain, x, y);
            if (lower * th - v > kViolationTol) ++a.lo;
            if (v - upper * th > kViolationTol) ++a.up;
        },
        [](Acc& a, const Acc& b) {
            a.lo += b.lo;
            a.up += b.up;
        });
    return {acc.lo, acc.up, n};
}

/// Counts pairs violating logmean-th >= arith-th (same c); always 0, since the
/// logarithmic mean never exceeds the arithmetic mean.
inline std::uint64_t comparison_check(const Domain& domain, double c, std::uint64_t n,
                                      std::uint64_t seed) {
    const MetricSpec logmean{MeanKind::logarithmic(), c, MetricForm::th};
    const MetricSpec arith{MeanKind::arithmetic(), c, MetricForm::th};
    return parallel_reduce(
        n, std::uint64_t{0},
        [&](std::uint64_t& bad, std::uint64_t i) {
            Rng rng(seed, i);
            const Point x = sample_point(domain, rng);
            const Point y = sample_point(domain, rng);
            if (eval(logmean, domain, x, y) < eval(arith, domain, x, y) - 1e-12) ++bad;
        },
        [](std::uint64_t& a, std::uint64_t b) { a += b; });
}

} // namespace imetric
