#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "imetric/bounds.hpp"
#include "imetric/geometry.hpp"
#include "imetric/metrics.hpp"
#include "imetric/parallel.hpp"
#include "imetric/rng.hpp"

namespace imetric {

/// Thrown by lambda_constant for dimensions where only the bracket
/// [4, 2 e^(n-1)) is known, not a closed-form value.
struct unsupported_dimension : std::domain_error {
    int dim;
    double bracket_lo;
    double bracket_hi;

    unsupported_dimension(int n, double lo, double hi)
        : std::domain_error("lambda_constant: no closed form for n = " + std::to_string(n) +
                            "; value lies in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            ")"),
          dim(n),
          bracket_lo(lo),
          bracket_hi(hi) {}
};

/// The planar Grotzsch-type constant used by the distortion bounds.
inline double lambda_constant(int n) {
    if (n < 2) throw std::invalid_argument("lambda_constant: dimension must be >= 2");
    if (n != 2) throw unsupported_dimension(n, 4.0, 2.0 * std::exp(static_cast<double>(n - 1)));
    return 4.0;
}

/// Parametrized quasiregular self-maps of the disk or the upper half-plane.
/// Dilatations are declared per kind, not computed: the disk automorphisms
/// and analytic powers are conformal (K = 1); the two stretches have exactly
/// the declared K.
struct QRMap {
    enum class Kind { mobius_ball, power_ball, vertical_stretch_half, radial_stretch_ball };

    Kind kind = Kind::mobius_ball;
    Point a = Point{0.0, 0.0}; // mobius_ball parameter, |a| < 1
    int m = 1;                 // power_ball exponent
    double K = 1.0;            // dilatation, >= 1

    static QRMap mobius(Point center) {
        if (center.dim() != 2 || squared_norm(center) >= 1.0)
            throw std::invalid_argument("QRMap::mobius: parameter must lie in the open unit disk");
        return {Kind::mobius_ball, std::move(center), 1, 1.0};
    }

    static QRMap power(int exponent) {
        if (exponent < 1) throw std::invalid_argument("QRMap::power: exponent must be >= 1");
        return {Kind::power_ball, Point{0.0, 0.0}, exponent, 1.0};
    }

    static QRMap vertical_stretch(double K) {
        if (!(K >= 1.0) || !std::isfinite(K))
            throw std::invalid_argument("QRMap::vertical_stretch: K must be >= 1");
        return {Kind::vertical_stretch_half, Point{0.0, 0.0}, 1, K};
    }

    static QRMap radial_stretch(double K) {
        if (!(K >= 1.0) || !std::isfinite(K))
            throw std::invalid_argument("QRMap::radial_stretch: K must be >= 1");
        return {Kind::radial_stretch_ball, Point{0.0, 0.0}, 1, K};
    }

    Domain domain() const {
        return kind == Kind::vertical_stretch_half ? Domain::half_space(2) : Domain::unit_ball(2);
    }

    /// Schwarz exponent K^(1/(1-n)) at n = 2.
    double alpha() const { return 1.0 / K; }
};

inline const char* to_string(QRMap::Kind k) {
    switch (k) {
        case QRMap::Kind::mobius_ball: return "mobius";
        case QRMap::Kind::power_ball: return "zpow";
        case QRMap::Kind::vertical_stretch_half: return "vstretch";
        case QRMap::Kind::radial_stretch_ball: return "rstretch";
    }
    return "?";
}

inline Point apply(const QRMap& map, const Point& x) {
    const Domain dom = map.domain();
    dom.require_inside(x);
    switch (map.kind) {
        case QRMap::Kind::mobius_ball: {
            const std::complex<double> z(x[0], x[1]);
            const std::complex<double> a(map.a[0], map.a[1]);
            const std::complex<double> w = (z - a) / (1.0 - std::conj(a) * z);
            return Point{w.real(), w.imag()};
        }
        case QRMap::Kind::power_ball: {
            const std::complex<double> z(x[0], x[1]);
            std::complex<double> w(1.0, 0.0);
            for (int i = 0; i < map.m; ++i) w *= z;
            return Point{w.real(), w.imag()};
        }
        case QRMap::Kind::vertical_stretch_half:
            return Point{x[0], map.K * x[1]};
        case QRMap::Kind::radial_stretch_ball: {
            const double r = norm(x);
            if (r == 0.0) return Point{0.0, 0.0};
            const double s = std::pow(r, 1.0 / map.K - 1.0);
            return Point{s * x[0], s * x[1]};
        }
    }
    throw std::logic_error("apply: unreachable");
}

// ---------------------------------------------------------------------------
// Distortion checks
// ---------------------------------------------------------------------------

struct SchwarzReport {
    double K = 1.0;
    double alpha = 1.0;
    double max_ratio_1 = 0.0; // max of th(rho'/2) / (lambda^(1-a) th(rho/2)^a)
    bool holds_1 = false;     // th(rho'/2) <= lambda^(1-a) th(rho/2)^a
    bool holds_2 = false;     // th(rho'/2) <= K (th(rho) + log 4), as printed
    bool holds_2_standard = false; // interpretation: rho' <= K (rho + log 4)
    std::uint64_t pairs = 0;
};

/// Checks both distortion inequalities on sampled pairs. holds_2 takes the
/// second inequality at face value (th of the full distance on the right),
/// which makes its right side at least K log 4; holds_2_standard reports the
/// usual additive form on the distances themselves.
inline SchwarzReport schwarz_check(const QRMap& map, std::uint64_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("schwarz_check: pairs must be >= 1");
    const Domain dom = map.domain();
    const double lambda = lambda_constant(2);
    const double a = map.alpha();
    const double factor = std::pow(lambda, 1.0 - a);

    struct Acc {
        double max_ratio = 0.0;
        double worst_1 = -std::numeric_limits<double>::infinity();
        double worst_2 = -std::numeric_limits<double>::infinity();
        double worst_std = -std::numeric_limits<double>::infinity();
    };
    Acc acc = parallel_reduce(
        pairs, Acc{},
        [&](Acc& s, std::uint64_t i) {
            Rng rng(seed, i);
            const Point x = sample_point(dom, rng);
            const Point y = sample_point(dom, rng);
            const Point fx = apply(map, x);
            const Point fy = apply(map, y);
            const double t_before = hyperbolic_th_half(dom, x, y);
            const double t_after = hyperbolic_th_half(dom, fx, fy);
            const double bound_1 = factor * std::pow(t_before, a);
            s.worst_1 = std::max(s.worst_1, t_after - bound_1);
            if (t_before > 0.0 && bound_1 > 0.0)
                s.max_ratio = std::max(s.max_ratio, t_after / bound_1);
            const double rho_before = 2.0 * std::atanh(t_before);
            const double rho_after = 2.0 * std::atanh(t_after);
            s.worst_2 =
                std::max(s.worst_2, t_after - map.K * (std::tanh(rho_before) + std::log(4.0)));
            s.worst_std =
                std::max(s.worst_std, rho_after - map.K * (rho_before + std::log(4.0)));
        },
        [](Acc& s, const Acc& o) {
            s.max_ratio = std::max(s.max_ratio, o.max_ratio);
            s.worst_1 = std::max(s.worst_1, o.worst_1);
            s.worst_2 = std::max(s.worst_2, o.worst_2);
            s.worst_std = std::max(s.worst_std, o.worst_std);
        });

    SchwarzReport rep;
    rep.K = map.K;
    rep.alpha = a;
    rep.max_ratio_1 = acc.max_ratio;
    rep.holds_1 = acc.worst_1 <= kViolationTol;
    rep.holds_2 = acc.worst_2 <= kViolationTol;
    rep.holds_2_standard = acc.worst_std <= kViolationTol;
    rep.pairs = pairs;
    return rep;
}

enum class MetricFamily { arith, log_mean };

inline const char* to_string(MetricFamily f) {
    return f == MetricFamily::arith ? "arith" : "log-mean";
}

inline MetricFamily parse_metric_family(std::string_view id) {
    if (id == "arith") return MetricFamily::arith;
    if (id == "log-mean") return MetricFamily::log_mean;
    throw std::invalid_argument("unknown family \"" + std::string(id) + "\"");
}

struct CorollaryReport {
    int inequality = 1; // 1/2 on the half-plane, 3/4 on the ball
    double c = 1.0;
    double K = 1.0;
    double max_slack = 0.0; // max of lhs - bound; holds iff <= 1e-9
    bool holds = false;
    std::uint64_t pairs = 0;
};

/// Distortion of the th-form family members under the map:
///   value(fx,fy) <= lambda^(1-a) max{1,1/c} (factor * value(x,y))^a
/// with factor = 1+c on the half-plane and max{2c, 1+c} on the ball.
inline CorollaryReport corollary_check(const QRMap& map, double c, MetricFamily family,
                                       std::uint64_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("corollary_check: pairs must be >= 1");
    const Domain dom = map.domain();
    const bool ball = dom.kind() == DomainKind::unit_ball;
    const MetricSpec spec{
        family == MetricFamily::arith ? MeanKind::arithmetic() : MeanKind::logarithmic(), c,
        MetricForm::th};
    const double a = map.alpha();
    const double outer = std::pow(lambda_constant(2), 1.0 - a) * std::max(1.0, 1.0 / c);
    const double inner = ball ? std::max(2.0 * c, 1.0 + c) : 1.0 + c;

    const double worst = parallel_reduce(
        pairs, -std::numeric_limits<double>::infinity(),
        [&](double& w, std::uint64_t i) {
            Rng rng(seed, i);
            const Point x = sample_point(dom, rng);
            const Point y = sample_point(dom, rng);
            const double before = eval(spec, dom, x, y);
            const double after = eval(spec, dom, apply(map, x), apply(map, y));
            w = std::max(w, after - outer * std::pow(inner * before, a));
        },
        [](double& w, double o) { w = std::max(w, o); });

    CorollaryReport rep;
    rep.inequality = (ball ? 3 : 1) + (family == MetricFamily::log_mean ? 1 : 0);
    rep.c = c;
    rep.K = map.K;
    rep.max_slack = worst;
    rep.holds = worst <= kViolationTol;
    rep.pairs = pairs;
    return rep;
}

} // namespace imetric
