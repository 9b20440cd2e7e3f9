#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "imetric/point.hpp"

namespace imetric {

enum class DomainKind { half_space, unit_ball, punctured_space };

inline const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::half_space: return "half_space";
        case DomainKind::unit_ball: return "unit_ball";
        case DomainKind::punctured_space: return "punctured_space";
    }
    return "?";
}

// Points closer to the boundary than this are rejected to avoid division underflow.
inline constexpr double kBoundaryGuard = 1e-300;

/// One of the three canonical domains: upper half-space (last coordinate > 0),
/// open unit ball, or R^n with the origin removed.
class Domain {
public:
    Domain(DomainKind kind, std::size_t dim) : kind_(kind), dim_(dim) {
        if (dim < 2) throw std::invalid_argument("Domain: dimension must be >= 2");
    }

    static Domain half_space(std::size_t dim = 2) { return {DomainKind::half_space, dim}; }
    static Domain unit_ball(std::size_t dim = 2) { return {DomainKind::unit_ball, dim}; }
    static Domain punctured_space(std::size_t dim = 2) { return {DomainKind::punctured_space, dim}; }

    DomainKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }

    bool contains(const Point& x) const {
        if (x.dim() != dim_)
            throw std::invalid_argument("Domain::contains: dimension mismatch");
        switch (kind_) {
            case DomainKind::half_space: return x[dim_ - 1] > 0.0;
            case DomainKind::unit_ball: return squared_norm(x) < 1.0;
            case DomainKind::punctured_space: return squared_norm(x) > 0.0;
        }
        return false;
    }

    /// Euclidean distance from x to the domain boundary. Requires x inside.
    double dist_to_boundary(const Point& x) const {
        require_inside(x);
        double d = 0.0;
        switch (kind_) {
            case DomainKind::half_space: d = x[dim_ - 1]; break;
            case DomainKind::unit_ball: d = 1.0 - norm(x); break;
            case DomainKind::punctured_space: d = norm(x); break;
        }
        if (d < kBoundaryGuard)
            throw std::domain_error("point is too close to the boundary");
        return d;
    }

    void require_inside(const Point& x) const {
        if (!contains(x))
            throw std::domain_error(std::string("point outside ") + to_string(kind_));
    }

    bool operator==(const Domain& other) const noexcept {
        return kind_ == other.kind_ && dim_ == other.dim_;
    }

private:
    DomainKind kind_;
    std::size_t dim_;
};

} // namespace imetric
