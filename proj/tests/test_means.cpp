#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "imetric/means.hpp"
#include "imetric/rng.hpp"
#include "test_util.hpp"

using namespace imetric;
using test_util::rel_diff;

TEST_CASE("known values") {
    CHECK(mean(MeanKind::logarithmic(), 2.0, 2.0) == 2.0);
    CHECK(mean(MeanKind::logarithmic(), 1.0, std::exp(1.0)) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
    CHECK(mean(MeanKind::power(1.0), 3.0, 4.0) == 3.5);
    CHECK(mean(MeanKind::power(2.0), 3.0, 4.0) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
    CHECK(mean(MeanKind::arithmetic(), 3.0, 4.0) == 3.5);
    CHECK(mean(MeanKind::min(), 3.0, 4.0) == 3.0);
    CHECK(mean(MeanKind::max(), 3.0, 4.0) == 4.0);
    CHECK(mean(MeanKind::geometric(), 4.0, 9.0) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("rejects nonpositive and non-finite input") {
    CHECK_THROWS_AS(mean(MeanKind::arithmetic(), 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mean(MeanKind::logarithmic(), -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(mean(MeanKind::min(), 1.0, std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(mean(MeanKind::max(), std::nan(""), 1.0), std::domain_error);
    CHECK_THROWS_AS(MeanKind::power(0.0), std::invalid_argument);
    CHECK_THROWS_AS(MeanKind::power(-2.0), std::invalid_argument);
}

TEST_CASE("mean chain min <= geometric <= logarithmic <= arithmetic <= max") {
    Rng rng(7, 0);
    for (int i = 0; i < 20000; ++i) {
        const double a = rng.log_uniform(1e-6, 1e6);
        const double b = rng.log_uniform(1e-6, 1e6);
        const double mn = mean(MeanKind::min(), a, b);
        const double g = mean(MeanKind::geometric(), a, b);
        const double l = mean(MeanKind::logarithmic(), a, b);
        const double ar = mean(MeanKind::arithmetic(), a, b);
        const double mx = mean(MeanKind::max(), a, b);
        CAPTURE(a);
        CAPTURE(b);
        const double slack = 4e-16 * mx;
        REQUIRE(mn <= g + slack);
        REQUIRE(g <= l + slack);
        REQUIRE(l <= ar + slack);
        REQUIRE(ar <= mx);
        if (rel_diff(a, b) > 1e-6) {
            REQUIRE(mn < g);
            REQUIRE(g < l);
            REQUIRE(l < ar);
            REQUIRE(ar < mx);
        }
    }
    // equality throughout iff a == b
    for (double a : {1e-8, 0.5, 1.0, 3.25, 1e9}) {
        for (auto kind : {MeanKind::min(), MeanKind::geometric(), MeanKind::logarithmic(),
                          MeanKind::arithmetic(), MeanKind::max(), MeanKind::power(3.0)})
            CHECK(mean(kind, a, a) == a);
    }
}

TEST_CASE("power mean is nondecreasing in the exponent; power(1) is arithmetic") {
    Rng rng(11, 0);
    for (int i = 0; i < 5000; ++i) {
        const double a = rng.log_uniform(1e-4, 1e4);
        const double b = rng.log_uniform(1e-4, 1e4);
        double prev = 0.0;
        for (double d : {0.2, 1.0 / 3.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
            const double m = mean(MeanKind::power(d), a, b);
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(d);
            REQUIRE(m >= prev - 1e-13 * m);
            prev = m;
        }
        CHECK(mean(MeanKind::power(1.0), a, b) == mean(MeanKind::arithmetic(), a, b));
    }
}

TEST_CASE("homogeneity: mean(t a, t b) = t mean(a, b)") {
    Rng rng(13, 0);
    const MeanKind kinds[] = {MeanKind::arithmetic(), MeanKind::power(0.4), MeanKind::power(3.0),
                              MeanKind::logarithmic(), MeanKind::min(), MeanKind::max(),
                              MeanKind::geometric()};
    for (int i = 0; i < 5000; ++i) {
        const double a = rng.log_uniform(1e-4, 1e4);
        const double b = a * rng.log_uniform(1.0 - 1e-2, 1.0 + 1e2); // includes near-equal pairs
        for (const auto& kind : kinds) {
            const double base = mean(kind, a, b);
            for (double t : {1e-6, 1.0, 1e6}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(t);
                REQUIRE(rel_diff(mean(kind, t * a, t * b), t * base) <= 1e-12);
            }
        }
    }
}

TEST_CASE("logarithmic mean is continuous across a == b") {
    for (double a : {1e-6, 0.3, 1.0, 7.5, 1e8}) {
        for (double eps : {1e-16, 1e-12, 1e-9, 1e-6, 1e-4}) {
            const double l = mean(MeanKind::logarithmic(), a, a * (1.0 + eps));
            CAPTURE(a);
            CAPTURE(eps);
            REQUIRE(std::fabs(l - a) <= a * eps);
        }
    }
    // the series branch and the log1p branch agree around the 1e-4 cutoff
    for (double a : {0.2, 1.0, 42.0}) {
        for (double u : {0.9e-4, 0.99e-4, 1.01e-4, 1.1e-4, 2e-4}) {
            const double direct = (a * u) / std::log1p(u);
            CHECK(rel_diff(mean(MeanKind::logarithmic(), a, a * (1.0 + u)), direct) < 1e-13);
        }
    }
}

TEST_CASE("symmetry is exact") {
    Rng rng(17, 0);
    const MeanKind kinds[] = {MeanKind::arithmetic(), MeanKind::power(0.7),
                              MeanKind::logarithmic(), MeanKind::geometric()};
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.log_uniform(1e-8, 1e8);
        const double b = rng.log_uniform(1e-8, 1e8);
        for (const auto& kind : kinds) CHECK(mean(kind, a, b) == mean(kind, b, a));
    }
}
