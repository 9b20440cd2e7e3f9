#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "imetric/domain.hpp"
#include "imetric/means.hpp"
#include "imetric/point.hpp"

namespace imetric {

/// The three forms of the family built over a mean M and a constant c > 0:
///   raw:  |x-y| / (c M(d(x), d(y)))
///   log:  log(1 + raw)
///   th:   |x-y| / (|x-y| + 2c M(d(x), d(y)))   ( = th(log/2) )
enum class MetricForm { raw, log, th };

inline const char* to_string(MetricForm f) {
    switch (f) {
        case MetricForm::raw: return "raw";
        case MetricForm::log: return "log";
        case MetricForm::th: return "th";
    }
    return "?";
}

struct MetricSpec {
    MeanKind mean = MeanKind::arithmetic();
    double c = 1.0;
    MetricForm form = MetricForm::th;

    MetricSpec() = default;
    MetricSpec(MeanKind m, double c_, MetricForm f) : mean(m), c(c_), form(f) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::invalid_argument("MetricSpec: c must be positive and finite");
    }

    bool operator==(const MetricSpec&) const = default;
};

inline std::string to_string(const MetricSpec& s) {
    return "(" + to_string(s.mean) + ", c=" + std::to_string(s.c) + ", " + to_string(s.form) + ")";
}

/// Value of the family member at (x, y). Zero is returned for x == y without
/// touching the boundary distances. The th form is evaluated from its own
/// display rather than via th(log/2); the chain identity is left to tests.
inline double eval(const MetricSpec& spec, const Domain& domain, const Point& x, const Point& y) {
    if (x == y) {
        domain.require_inside(x);
        return 0.0;
    }
    const double dx = domain.dist_to_boundary(x);
    const double dy = domain.dist_to_boundary(y);
    const double m = mean(spec.mean, dx, dy);
    const double r = dist(x, y);
    switch (spec.form) {
        case MetricForm::raw: return r / (spec.c * m);
        case MetricForm::log: return std::log1p(r / (spec.c * m));
        case MetricForm::th: return r / (r + 2.0 * spec.c * m);
    }
    throw std::logic_error("eval: unreachable");
}

/// Specs of the named metrics from the literature this family generalizes.
/// `param` is the constant of the named metric itself and only matters for
/// "h", whose family constant is the reciprocal.
///   "j"       distance ratio metric        (min, 1, log)
///   "j*"      its th transform             (min, 1, th)
///   "h"       geometric-mean log metric    (geometric, 1/param, log)
///   "t"       arithmetic th metric         (arithmetic, 1, th)
///   "c-tilde" max-mean raw quasi-metric    (max, 1, raw)
inline MetricSpec named_spec(std::string_view name, double param = 1.0) {
    if (name == "j") return {MeanKind::min(), 1.0, MetricForm::log};
    if (name == "j*") return {MeanKind::min(), 1.0, MetricForm::th};
    if (name == "h") {
        if (!(param > 0.0) || !std::isfinite(param))
            throw std::invalid_argument("named_spec: \"h\" needs a positive finite parameter");
        return {MeanKind::geometric(), 1.0 / param, MetricForm::log};
    }
    if (name == "t") return {MeanKind::arithmetic(), 1.0, MetricForm::th};
    if (name == "c-tilde") return {MeanKind::max(), 1.0, MetricForm::raw};
    throw std::invalid_argument("named_spec: unknown name \"" + std::string(name) + "\"");
}

} // namespace imetric
