#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "imetric/harness.hpp"
#include "test_util.hpp"

using namespace imetric;
using test_util::rel_diff;

TEST_CASE("triangle defect at known configurations") {
    const auto B = Domain::unit_ball(2);
    const MetricSpec t{MeanKind::arithmetic(), 1.0, MetricForm::th};

    const Point p{0.1, 0.2};
    CHECK(triangle_defect(t, B, p, p, p) == 0.0);

    // collinear equality case: 0.25 + 0.25 - 0.5
    CHECK(triangle_defect(t, B, Point{0.5, 0}, Point{-0.5, 0}, Point{0, 0}) == 0.0);

    // near-diameter triple of the log form; independent arithmetic route
    const MetricSpec lg{MeanKind::arithmetic(), 1.0, MetricForm::log};
    const double expected = 2.0 * std::log1p(0.99 / 0.505) - std::log1p(198.0);
    CHECK(expected == doctest::Approx(-3.1226587116).epsilon(1e-8));
    CHECK(rel_diff(triangle_defect(lg, B, Point{0.99, 0}, Point{-0.99, 0}, Point{0, 0}),
                   expected) < 1e-12);

    CHECK_THROWS_AS(triangle_defect(t, B, Point{2, 0}, Point{0, 0}, Point{0.1, 0}),
                    std::domain_error);
}

TEST_CASE("axiom sweeps: metric members are clean, non-metric members are caught") {
    const auto H = Domain::half_space(2);
    const auto B = Domain::unit_ball(2);
    const auto P = Domain::punctured_space(2);

    const auto th_h = sample_axiom_check({MeanKind::arithmetic(), 1.0, MetricForm::th}, H,
                                         100000, 42);
    CHECK(th_h.violations == 0);
    CHECK(th_h.symmetry_failures == 0);
    CHECK(th_h.identity_failures == 0);
    CHECK_FALSE(th_h.witness.has_value());
    CHECK(th_h.min_defect >= 0.0);

    const auto log_b = sample_axiom_check({MeanKind::arithmetic(), 1.0, MetricForm::log}, B,
                                          100000, 42);
    CHECK(log_b.violations > 0);
    REQUIRE(log_b.witness.has_value());
    const auto& w = *log_b.witness;
    CHECK(reevaluate_witness({MeanKind::arithmetic(), 1.0, MetricForm::log}, B, w) < -1e-9);
    CHECK(log_b.min_defect < -1e-9);

    const auto raw_p = sample_axiom_check({MeanKind::logarithmic(), 1.0, MetricForm::raw}, P,
                                          100000, 42);
    CHECK(raw_p.violations == 0);
}

TEST_CASE("axiom sweep reports are identical under any worker count") {
    const auto B = Domain::unit_ball(2);
    const MetricSpec spec{MeanKind::arithmetic(), 1.0, MetricForm::log};

    setenv("IMETRIC_THREADS", "1", 1);
    const auto serial = sample_axiom_check(spec, B, 50000, 7);
    setenv("IMETRIC_THREADS", "4", 1);
    const auto wide = sample_axiom_check(spec, B, 50000, 7);
    unsetenv("IMETRIC_THREADS");

    CHECK(serial.min_defect == wide.min_defect);
    CHECK(serial.violations == wide.violations);
    CHECK(serial.noise == wide.noise);
    REQUIRE(serial.witness.has_value() == wide.witness.has_value());
    if (serial.witness) CHECK(*serial.witness == *wide.witness);

    // different seed, different stream
    const auto other = sample_axiom_check(spec, B, 50000, 8);
    CHECK(other.min_defect != serial.min_defect);
}

TEST_CASE("counterexample reproduction: direct and closed-form defects agree") {
    struct Expected {
        CounterexampleCase which;
        double param;
        double defect; // frozen from the closed forms, worked by hand
    };
    const Expected table[] = {
        {CounterexampleCase::flat_boundary_arith, 0.01, -2.8698343680},
        {CounterexampleCase::ball_diameter_arith, 0.99, -3.2387764866},
        {CounterexampleCase::half_plane_logmean, 0.99, -1.2601165427},
        {CounterexampleCase::ball_logmean, 0.99, -1.8459259861},
    };
    for (const auto& e : table) {
        const auto res = reproduce_counterexample(e.which, 1.0, e.param);
        CAPTURE(to_string(e.which));
        CHECK(res.defect_direct < 0.0);
        CHECK(rel_diff(res.defect_direct, res.defect_closed_form) <= 1e-9);
        CHECK(res.defect_closed_form == doctest::Approx(e.defect).epsilon(1e-9));
        CHECK(res.domain.contains(res.points[0]));
        CHECK(res.domain.contains(res.points[1]));
        CHECK(res.domain.contains(res.points[2]));
    }

    for (double c : {0.5, 2.0}) {
        for (auto which :
             {CounterexampleCase::flat_boundary_arith, CounterexampleCase::ball_diameter_arith,
              CounterexampleCase::half_plane_logmean, CounterexampleCase::ball_logmean}) {
            const double param = which == CounterexampleCase::flat_boundary_arith ? 0.01 : 0.99;
            const auto res = reproduce_counterexample(which, c, param);
            CAPTURE(to_string(which));
            CAPTURE(c);
            CHECK(res.defect_direct < 0.0);
            CHECK(rel_diff(res.defect_direct, res.defect_closed_form) <= 1e-9);
        }
    }

    CHECK_THROWS_AS(reproduce_counterexample(CounterexampleCase::ball_logmean, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(reproduce_counterexample(CounterexampleCase::ball_logmean, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(reproduce_counterexample(CounterexampleCase::flat_boundary_arith, 1.0, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(reproduce_counterexample(CounterexampleCase::ball_logmean, -1.0, 0.5),
                    std::invalid_argument);
    CHECK(parse_counterexample_case("L3.3") == CounterexampleCase::flat_boundary_arith);
    CHECK_THROWS_AS(parse_counterexample_case("L9.9"), std::invalid_argument);
}

TEST_CASE("search finds violations exactly where they exist") {
    const auto P = Domain::punctured_space(2);

    // below the power-mean threshold: a witness exists and the search finds it
    const auto found = search_counterexample({MeanKind::power(0.2), 1.0, MetricForm::raw}, P,
                                             1000000, 42);
    REQUIRE(found.witness.has_value());
    CHECK(found.defect < -1e-8);
    CHECK(reevaluate_witness({MeanKind::power(0.2), 1.0, MetricForm::raw}, P, *found.witness) <
          -1e-9);
    CHECK(found.evaluations <= 1000000);

    // at the threshold: nothing to find
    const auto at_threshold = search_counterexample(
        {MeanKind::power(1.0 / 3.0), 1.0, MetricForm::raw}, P, 100000, 42);
    CHECK_FALSE(at_threshold.witness.has_value());
    CHECK(at_threshold.evaluations >= 100000);

    // a true metric: nothing to find
    const auto metric = search_counterexample({MeanKind::arithmetic(), 1.0, MetricForm::th},
                                              Domain::unit_ball(2), 100000, 42);
    CHECK_FALSE(metric.witness.has_value());

    CHECK_THROWS_AS(search_counterexample({MeanKind::arithmetic(), 1.0, MetricForm::th},
                                          Domain::unit_ball(2), 0, 42),
                    std::invalid_argument);
}

TEST_CASE("conjecture exploration grids") {
    const double cs[] = {1.0};
    const double ds[] = {1.0};

    const auto power_cells = explore_conjecture(ConjectureId::power_mean, cs, ds, 30000, 42);
    CHECK(power_cells.size() == 6); // 2 domains x 1 c x 1 d x 3 forms
    for (const auto& cell : power_cells) {
        CAPTURE(to_string(cell.domain.kind()));
        CAPTURE(to_string(cell.form));
        if (cell.form == MetricForm::th) {
            CHECK(cell.report.violations == 0);
        } else if (cell.domain.kind() == DomainKind::half_space) {
            // the raw and log cells each break on the half-plane at c = d = 1
            CHECK(cell.report.violations > 0);
        }
    }

    const auto log_cells = explore_conjecture(ConjectureId::log_mean, cs, ds, 30000, 42);
    CHECK(log_cells.size() == 2);
    for (const auto& cell : log_cells) {
        CHECK_FALSE(cell.d.has_value());
        CHECK(cell.report.violations == 0);
    }

    CHECK_THROWS_AS(explore_conjecture(ConjectureId::power_mean, {}, ds, 10, 1),
                    std::invalid_argument);
    CHECK(parse_conjecture_id("C3.7") == ConjectureId::power_mean);
    CHECK(parse_conjecture_id("C4.4") == ConjectureId::log_mean);
    CHECK_THROWS_AS(parse_conjecture_id("C1.1"), std::invalid_argument);
}

TEST_CASE("defect accounting separates violations from numerical noise") {
    imetric::detail::DefectAccum acc;
    acc.record(1.0, 0);
    acc.record(-5e-10, 1); // inside the noise band
    acc.record(-2e-9, 2);  // a real violation
    acc.record(0.0, 3);
    CHECK(acc.violations == 1);
    CHECK(acc.noise == 1);
    CHECK(acc.min_defect == -2e-9);
    CHECK(acc.min_index == 2);

    // merge order must not matter for the counts or the argmin
    imetric::detail::DefectAccum left, right;
    left.record(-2e-9, 2);
    right.record(-2e-9, 7);
    right.record(-5e-10, 5);
    left.merge(right);
    CHECK(left.violations == 2);
    CHECK(left.min_index == 2);
}

TEST_CASE("search is deterministic for a fixed seed") {
    const auto P = Domain::punctured_space(2);
    const MetricSpec spec{MeanKind::power(0.2), 1.0, MetricForm::raw};
    const auto a = search_counterexample(spec, P, 200000, 9);
    const auto b = search_counterexample(spec, P, 200000, 9);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.defect == b.defect);
    REQUIRE(a.witness.has_value() == b.witness.has_value());
    if (a.witness) CHECK(*a.witness == *b.witness);
}

TEST_CASE("log and th transforms of true metrics stay metrics") {
    const auto s_punctured = transform_check(BaseMetric::triangular_ratio,
                                             Domain::punctured_space(2), 100000, 42);
    CHECK(s_punctured.log_form.violations == 0);
    CHECK(s_punctured.th_form.violations == 0);

    const auto rho_h = transform_check(BaseMetric::hyperbolic, Domain::half_space(2), 100000, 42);
    CHECK(rho_h.log_form.violations == 0);
    CHECK(rho_h.th_form.violations == 0);

    const auto rho_b = transform_check(BaseMetric::hyperbolic, Domain::unit_ball(2), 100000, 42);
    CHECK(rho_b.log_form.violations == 0);
    CHECK(rho_b.th_form.violations == 0);

    CHECK_THROWS_AS(
        transform_check(BaseMetric::hyperbolic, Domain::punctured_space(2), 100, 42),
        std::invalid_argument);
}
