#pragma once

#include <cmath>
#include <cstdint>

#include "imetric/domain.hpp"
#include "imetric/point.hpp"

namespace imetric {

/// SplitMix64 generator. Each (seed, stream) pair yields an independent
/// substream, so sample i can be drawn with no dependence on samples < i;
/// results are identical for any partitioning of the index range.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : state_(mix(seed) ^ mix(stream + 0x9E3779B97F4A7C15ULL)) {
        next();
        next();
    }

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    double log_uniform(double lo, double hi) noexcept {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

namespace detail {

// Uniform direction on the unit sphere, by rejection from the cube.
inline Point sample_direction(std::size_t dim, Rng& rng) {
    std::vector<double> v(dim);
    for (;;) {
        double s = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = rng.uniform(-1.0, 1.0);
            s += v[i] * v[i];
        }
        if (s > 1e-12 && s < 1.0) {
            const double inv = 1.0 / std::sqrt(s);
            for (double& c : v) c *= inv;
            return Point(v);
        }
    }
}

} // namespace detail

/// Draws one point of the domain. Triangle-inequality failures concentrate
/// near the boundary, so the distributions weight that regime:
///   half-space:      horizontals uniform in [-10,10], height log-uniform in [1e-4,1e2]
///   unit ball:       uniform by rejection, with 10% of draws rescaled to radius in [0.99, 1-1e-6]
///   punctured space: uniform direction, radius log-uniform in [1e-4,1e4]
inline Point sample_point(const Domain& domain, Rng& rng) {
    const std::size_t n = domain.dim();
    switch (domain.kind()) {
        case DomainKind::half_space: {
            std::vector<double> v(n);
            for (std::size_t i = 0; i + 1 < n; ++i) v[i] = rng.uniform(-10.0, 10.0);
            v[n - 1] = rng.log_uniform(1e-4, 1e2);
            return Point(v);
        }
        case DomainKind::unit_ball: {
            const bool near_boundary = rng.uniform() < 0.1;
            if (near_boundary) {
                Point dir = detail::sample_direction(n, rng);
                const double r = rng.uniform(0.99, 1.0 - 1e-6);
                std::vector<double> v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = r * dir[i];
                return Point(v);
            }
            std::vector<double> v(n);
            for (;;) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] = rng.uniform(-1.0, 1.0);
                    s += v[i] * v[i];
                }
                // keep a hair away from both the puncture-like origin and the sphere
                if (s > 1e-24 && std::sqrt(s) < 1.0 - 1e-12) return Point(v);
            }
        }
        case DomainKind::punctured_space: {
            Point dir = detail::sample_direction(n, rng);
            const double r = rng.log_uniform(1e-4, 1e4);
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = r * dir[i];
            return Point(v);
        }
    }
    throw std::logic_error("sample_point: unreachable");
}

} // namespace imetric
