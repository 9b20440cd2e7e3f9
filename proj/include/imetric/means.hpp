#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace imetric {

/// Selector for the two-argument mean used by the metric family.
struct MeanKind {
    enum class Tag { arithmetic, power, logarithmic, min, max, geometric };

    Tag tag = Tag::arithmetic;
    double exponent = 1.0; // meaningful for Tag::power only

    static MeanKind arithmetic() { return {Tag::arithmetic, 1.0}; }
    static MeanKind logarithmic() { return {Tag::logarithmic, 1.0}; }
    static MeanKind min() { return {Tag::min, 1.0}; }
    static MeanKind max() { return {Tag::max, 1.0}; }
    static MeanKind geometric() { return {Tag::geometric, 1.0}; }
    static MeanKind power(double d) {
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("MeanKind::power: exponent must be positive and finite");
        return {Tag::power, d};
    }

    bool operator==(const MeanKind&) const = default;
};

inline std::string to_string(const MeanKind& k) {
    switch (k.tag) {
        case MeanKind::Tag::arithmetic: return "arithmetic";
        case MeanKind::Tag::power: return "power(" + std::to_string(k.exponent) + ")";
        case MeanKind::Tag::logarithmic: return "logarithmic";
        case MeanKind::Tag::min: return "min";
        case MeanKind::Tag::max: return "max";
        case MeanKind::Tag::geometric: return "geometric";
    }
    return "?";
}

namespace detail {

// a <= b. Near-equal arguments go through the series of u/log(1+u) to dodge
// the cancellation in (a-b)/(log a - log b); elsewhere log1p keeps the
// quotient accurate at any scale.
inline double log_mean_ordered(double a, double b) {
    if (a == b) return a;
    const double diff = b - a;
    const double u = diff / a;
    if (u < 1e-4) {
        const double c2 = -1.0 / 12.0, c3 = 1.0 / 24.0, c4 = -19.0 / 720.0, c5 = 3.0 / 160.0;
        return a * (1.0 + u * (0.5 + u * (c2 + u * (c3 + u * (c4 + u * c5)))));
    }
    return diff / std::log1p(u);
}

// a <= b. The ratio a/b <= 1 is exponentiated instead of the raw arguments,
// so large exponents cannot overflow.
inline double power_mean_ordered(double a, double b, double d) {
    if (d == 1.0) return 0.5 * (a + b);
    const double q = std::pow(a / b, d);
    return b * std::pow(0.5 * (1.0 + q), 1.0 / d);
}

} // namespace detail

/// M(a, b) for positive finite a, b. Symmetric, homogeneous of degree 1, and
/// always inside [min(a,b), max(a,b)].
inline double mean(const MeanKind& kind, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("mean: arguments must be positive and finite");
    if (a > b) std::swap(a, b);
    switch (kind.tag) {
        case MeanKind::Tag::arithmetic: return 0.5 * (a + b);
        case MeanKind::Tag::power: return detail::power_mean_ordered(a, b, kind.exponent);
        case MeanKind::Tag::logarithmic: return detail::log_mean_ordered(a, b);
        case MeanKind::Tag::min: return a;
        case MeanKind::Tag::max: return b;
        case MeanKind::Tag::geometric: return std::sqrt(a * b);
    }
    throw std::logic_error("mean: unreachable");
}

} // namespace imetric
