#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace imetric {

/// A point of R^n, n >= 2, with finite coordinates.
class Point {
public:
    Point() = default;

    Point(std::initializer_list<double> values) : coords_(values) { validate(); }

    explicit Point(std::vector<double> values) : coords_(std::move(values)) { validate(); }

    static Point zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

    std::size_t dim() const noexcept { return coords_.size(); }

    double operator[](std::size_t i) const { return coords_[i]; }

    double& operator[](std::size_t i) { return coords_[i]; }

    const std::vector<double>& coords() const noexcept { return coords_; }

    bool operator==(const Point& other) const noexcept { return coords_ == other.coords_; }

private:
    void validate() const {
        if (coords_.size() < 2)
            throw std::invalid_argument("Point: dimension must be >= 2");
        for (double v : coords_)
            if (!std::isfinite(v))
                throw std::invalid_argument("Point: coordinates must be finite");
    }

    std::vector<double> coords_;
};

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("dimension mismatch between points");
}

inline double squared_norm(const Point& p) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) s += p[i] * p[i];
    return s;
}

inline double norm(const Point& p) noexcept { return std::sqrt(squared_norm(p)); }

inline double squared_dist(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(squared_dist(a, b)); }

} // namespace imetric
