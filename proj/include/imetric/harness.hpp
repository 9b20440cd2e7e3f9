#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "imetric/geometry.hpp"
#include "imetric/metrics.hpp"
#include "imetric/parallel.hpp"
#include "imetric/rng.hpp"

namespace imetric {

/// Defects below -kViolationTol count as triangle-inequality violations;
/// negative defects inside [-kViolationTol, 0) are logged as numerical noise.
/// All checked values are O(1) (th/log forms, or raw forms bounded by the
/// mean), so an absolute tolerance suffices.
inline constexpr double kViolationTol = 1e-9;

struct DefectReport {
    std::string label;
    std::optional<MetricSpec> spec;
    Domain domain;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double min_defect = std::numeric_limits<double>::infinity();
    std::uint64_t violations = 0;
    std::uint64_t noise = 0;
    std::uint64_t symmetry_failures = 0;
    std::uint64_t identity_failures = 0;
    std::optional<std::array<Point, 3>> witness;
};

/// d(x,z) + d(z,y) - d(x,y); negative values witness a triangle failure.
inline double triangle_defect(const MetricSpec& spec, const Domain& domain, const Point& x,
                              const Point& y, const Point& z) {
    return eval(spec, domain, x, z) + eval(spec, domain, z, y) - eval(spec, domain, x, y);
}

namespace detail {

struct DefectAccum {
    double min_defect = std::numeric_limits<double>::infinity();
    std::uint64_t min_index = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t violations = 0;
    std::uint64_t noise = 0;
    std::uint64_t symmetry_failures = 0;
    std::uint64_t identity_failures = 0;

    void record(double defect, std::uint64_t index) {
        if (defect < min_defect || (defect == min_defect && index < min_index)) {
            min_defect = defect;
            min_index = index;
        }
        if (defect < -kViolationTol)
            ++violations;
        else if (defect < 0.0)
            ++noise;
    }

    void merge(const DefectAccum& o) {
        if (o.min_defect < min_defect || (o.min_defect == min_defect && o.min_index < min_index)) {
            min_defect = o.min_defect;
            min_index = o.min_index;
        }
        violations += o.violations;
        noise += o.noise;
        symmetry_failures += o.symmetry_failures;
        identity_failures += o.identity_failures;
    }
};

inline std::array<Point, 3> sample_triple(const Domain& domain, std::uint64_t seed,
                                          std::uint64_t index) {
    Rng rng(seed, index);
    Point x = sample_point(domain, rng);
    Point y = sample_point(domain, rng);
    Point z = sample_point(domain, rng);
    return {std::move(x), std::move(y), std::move(z)};
}

template <class DistFn>
DefectReport run_triangle_sweep(std::string label, std::optional<MetricSpec> spec,
                                const Domain& domain, std::uint64_t n, std::uint64_t seed,
                                DistFn&& d, bool per_sample_axioms) {
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    DefectAccum acc = parallel_reduce(
        n, DefectAccum{},
        [&](DefectAccum& a, std::uint64_t i) {
            const auto t = sample_triple(domain, seed, i);
            const double xy = d(t[0], t[1]);
            const double xz = d(t[0], t[2]);
            const double zy = d(t[2], t[1]);
            a.record(xz + zy - xy, i);
            if (per_sample_axioms) {
                if (d(t[1], t[0]) != xy) ++a.symmetry_failures;
                if (d(t[0], t[0]) != 0.0) ++a.identity_failures;
                if (!(t[0] == t[1]) && !(xy > 0.0)) ++a.identity_failures;
            }
        },
        [](DefectAccum& a, const DefectAccum& b) { a.merge(b); });

    DefectReport report{std::move(label), std::move(spec), domain,          n,
                        seed,             acc.min_defect,  acc.violations,  acc.noise,
                        acc.symmetry_failures, acc.identity_failures, std::nullopt};
    if (acc.violations > 0) report.witness = sample_triple(domain, seed, acc.min_index);
    return report;
}

} // namespace detail

/// Draws n independent triples and checks the triangle inequality, symmetry
/// and identity of indiscernibles for the given family member. Deterministic
/// for a fixed seed under any worker count.
inline DefectReport sample_axiom_check(const MetricSpec& spec, const Domain& domain,
                                       std::uint64_t n, std::uint64_t seed) {
    auto d = [&](const Point& a, const Point& b) { return eval(spec, domain, a, b); };
    return detail::run_triangle_sweep(to_string(spec) + " on " + to_string(domain.kind()), spec,
                                      domain, n, seed, d, true);
}

// ---------------------------------------------------------------------------
// Known counterexample configurations
// ---------------------------------------------------------------------------

/// The four concrete triples on which the log-form families fail the triangle
/// inequality, keyed by the case ids used on the CLI.
///   L3.3  half-plane, arithmetic family; x,y at height h/4 flanking the foot
///         of z = (0, 1/4); valid for 0 < h < 1/4
///   L3.4  unit disk, arithmetic family; x = (k,0), y = (-k,0), z = 0
///   L4.2  half-plane, log-mean family; x = (k,1-k), y = (-k,1-k), z = (0,1)
///   L4.3  unit disk, log-mean family; x = (k,0), y = (-k,0), z = 0
enum class CounterexampleCase { flat_boundary_arith, ball_diameter_arith, half_plane_logmean, ball_logmean };

inline const char* to_string(CounterexampleCase c) {
    switch (c) {
        case CounterexampleCase::flat_boundary_arith: return "L3.3";
        case CounterexampleCase::ball_diameter_arith: return "L3.4";
        case CounterexampleCase::half_plane_logmean: return "L4.2";
        case CounterexampleCase::ball_logmean: return "L4.3";
    }
    return "?";
}

inline CounterexampleCase parse_counterexample_case(std::string_view id) {
    if (id == "L3.3") return CounterexampleCase::flat_boundary_arith;
    if (id == "L3.4") return CounterexampleCase::ball_diameter_arith;
    if (id == "L4.2") return CounterexampleCase::half_plane_logmean;
    if (id == "L4.3") return CounterexampleCase::ball_logmean;
    throw std::invalid_argument("unknown counterexample case \"" + std::string(id) + "\"");
}

struct CounterexampleResult {
    CounterexampleCase which;
    double c = 1.0;
    double param = 0.99;
    Domain domain;
    MetricSpec eval_spec;
    std::array<Point, 3> points; // x, y, z
    double defect_direct = 0.0;
    double defect_closed_form = 0.0;
};

/// Builds the configuration, evaluates the defect through the metric itself,
/// and independently through the case's closed-form expression. The two
/// routes agree to ~1e-12 relative; both are negative for param near its
/// limit (k near 1, h near 0).
///
/// The closed forms of the arithmetic cases are written in the unnormalized
/// sum d(x)+d(y); in this family that is the member with constant 2c, which
/// is what the direct route evaluates (the case is scale-free in c, so this
/// is only a relabeling).
inline CounterexampleResult reproduce_counterexample(CounterexampleCase which, double c,
                                                     double param) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("reproduce_counterexample: c must be positive");
    const bool is_flat = which == CounterexampleCase::flat_boundary_arith;
    const double lo = 0.0;
    const double hi = is_flat ? 0.25 : 1.0;
    if (!(param > lo) || !(param < hi))
        throw std::invalid_argument("reproduce_counterexample: param out of range");

    const double k = param;
    CounterexampleResult r{which,
                           c,
                           param,
                           Domain::unit_ball(2),
                           MetricSpec{MeanKind::arithmetic(), c, MetricForm::log},
                           {Point{0, 1}, Point{0, 1}, Point{0, 1}},
                           0.0,
                           0.0};
    switch (which) {
        case CounterexampleCase::flat_boundary_arith: {
            const double h = param;
            r.domain = Domain::half_space(2);
            r.eval_spec = MetricSpec{MeanKind::arithmetic(), 2.0 * c, MetricForm::log};
            r.points = {Point{-0.25, h / 4.0}, Point{0.25, h / 4.0}, Point{0.0, 0.25}};
            r.defect_closed_form =
                2.0 * std::log1p(std::sqrt(2.0 - 2.0 * h + h * h) / (c * (h + 1.0))) -
                std::log1p(1.0 / (c * h));
            break;
        }
        case CounterexampleCase::ball_diameter_arith:
            r.domain = Domain::unit_ball(2);
            r.eval_spec = MetricSpec{MeanKind::arithmetic(), 2.0 * c, MetricForm::log};
            r.points = {Point{k, 0.0}, Point{-k, 0.0}, Point{0.0, 0.0}};
            r.defect_closed_form = 2.0 * std::log1p(k / (c * (2.0 - k))) -
                                   std::log1p(k / (c * (1.0 - k)));
            break;
        case CounterexampleCase::half_plane_logmean:
            r.domain = Domain::half_space(2);
            r.eval_spec = MetricSpec{MeanKind::logarithmic(), c, MetricForm::log};
            r.points = {Point{k, 1.0 - k}, Point{-k, 1.0 - k}, Point{0.0, 1.0}};
            r.defect_closed_form =
                2.0 * std::log(1.0 - std::sqrt(2.0) * std::log1p(-k) / c) -
                std::log1p(2.0 * k / (c * (1.0 - k)));
            break;
        case CounterexampleCase::ball_logmean:
            r.domain = Domain::unit_ball(2);
            r.eval_spec = MetricSpec{MeanKind::logarithmic(), c, MetricForm::log};
            r.points = {Point{k, 0.0}, Point{-k, 0.0}, Point{0.0, 0.0}};
            r.defect_closed_form = 2.0 * std::log(1.0 - std::log1p(-k) / c) -
                                   std::log1p(2.0 * k / (c * (1.0 - k)));
            break;
    }
    r.defect_direct =
        triangle_defect(r.eval_spec, r.domain, r.points[0], r.points[1], r.points[2]);
    return r;
}

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

struct SearchOutcome {
    std::optional<std::array<Point, 3>> witness;
    double defect = 0.0;              // defect at the witness, if any
    std::uint64_t evaluations = 0;    // triangle_defect evaluations spent
};

/// Random restarts followed by coordinate-wise pattern descent on the
/// triangle defect. Returns the first triple found with defect < -1e-8, or
/// nothing once `budget` defect evaluations are spent.
inline SearchOutcome search_counterexample(const MetricSpec& spec, const Domain& domain,
                                           std::uint64_t budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("search_counterexample: budget must be >= 1");
    constexpr double kFound = -1e-8;

    SearchOutcome out;
    auto in_domain = [&](const Point& p) {
        if (!domain.contains(p)) return false;
        try {
            return domain.dist_to_boundary(p) > 1e-12;
        } catch (const std::domain_error&) {
            return false;
        }
    };
    auto defect_of = [&](const std::array<Point, 3>& t) {
        ++out.evaluations;
        return triangle_defect(spec, domain, t[0], t[1], t[2]);
    };

    for (std::uint64_t restart = 0; out.evaluations < budget; ++restart) {
        auto triple = detail::sample_triple(domain, seed, restart);
        double best = defect_of(triple);
        if (best < kFound) {
            out.witness = triple;
            out.defect = best;
            return out;
        }

        // per-coordinate base steps, scaled to the starting configuration
        std::array<std::vector<double>, 3> step;
        for (int p = 0; p < 3; ++p) {
            step[p].resize(domain.dim());
            const double scale =
                domain.kind() == DomainKind::unit_ball ? 0.1 : 0.25 * std::max(norm(triple[p]), 1e-3);
            for (auto& s : step[p]) s = scale;
        }

        double shrink = 1.0;
        while (shrink > 1e-10 && out.evaluations < budget) {
            bool improved = false;
            for (int p = 0; p < 3 && out.evaluations < budget; ++p) {
                for (std::size_t j = 0; j < domain.dim() && out.evaluations < budget; ++j) {
                    for (double sign : {1.0, -1.0}) {
                        auto cand = triple;
                        cand[p][j] += sign * shrink * step[p][j];
                        if (!in_domain(cand[p])) continue;
                        const double v = defect_of(cand);
                        if (v < best) {
                            best = v;
                            triple = cand;
                            improved = true;
                            if (best < kFound) {
                                out.witness = triple;
                                out.defect = best;
                                return out;
                            }
                            break;
                        }
                        if (out.evaluations >= budget) break;
                    }
                }
            }
            if (!improved) shrink *= 0.5;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conjecture exploration
// ---------------------------------------------------------------------------

/// C3.7: the power-mean family on half-plane and disk; its th form is
/// conjectured to be a metric for all c, d > 0 while raw and log forms fail.
/// C4.4: the log-mean th form, conjectured to be a metric for all c > 0.
enum class ConjectureId { power_mean, log_mean };

inline const char* to_string(ConjectureId id) {
    return id == ConjectureId::power_mean ? "C3.7" : "C4.4";
}

inline ConjectureId parse_conjecture_id(std::string_view id) {
    if (id == "C3.7") return ConjectureId::power_mean;
    if (id == "C4.4") return ConjectureId::log_mean;
    throw std::invalid_argument("unknown conjecture id \"" + std::string(id) + "\"");
}

struct ConjectureCell {
    Domain domain;
    double c = 1.0;
    std::optional<double> d; // power exponent; empty for the log-mean family
    MetricForm form = MetricForm::th;
    DefectReport report;
};

/// Runs sample_axiom_check over a (c[, d], form, domain) grid. Every cell
/// sees the same triples (same seed and sampler), so cells differ only in the
/// function under test.
inline std::vector<ConjectureCell> explore_conjecture(ConjectureId id,
                                                      std::span<const double> c_grid,
                                                      std::span<const double> d_grid,
                                                      std::uint64_t n, std::uint64_t seed) {
    if (c_grid.empty()) throw std::invalid_argument("explore_conjecture: empty c grid");
    if (id == ConjectureId::power_mean && d_grid.empty())
        throw std::invalid_argument("explore_conjecture: empty d grid");

    const std::array<Domain, 2> domains{Domain::half_space(2), Domain::unit_ball(2)};
    std::vector<ConjectureCell> cells;
    for (const Domain& domain : domains) {
        for (double c : c_grid) {
            if (id == ConjectureId::log_mean) {
                MetricSpec spec{MeanKind::logarithmic(), c, MetricForm::th};
                cells.push_back({domain, c, std::nullopt, MetricForm::th,
                                 sample_axiom_check(spec, domain, n, seed)});
                continue;
            }
            for (double d : d_grid) {
                for (MetricForm form : {MetricForm::raw, MetricForm::log, MetricForm::th}) {
                    MetricSpec spec{MeanKind::power(d), c, form};
                    cells.push_back(
                        {domain, c, d, form, sample_axiom_check(spec, domain, n, seed)});
                }
            }
        }
    }
    return cells;
}

// ---------------------------------------------------------------------------
// Metric-transform check
// ---------------------------------------------------------------------------

enum class BaseMetric { triangular_ratio, hyperbolic };

inline const char* to_string(BaseMetric b) {
    return b == BaseMetric::triangular_ratio ? "s" : "rho";
}

inline BaseMetric parse_base_metric(std::string_view id) {
    if (id == "s") return BaseMetric::triangular_ratio;
    if (id == "rho") return BaseMetric::hyperbolic;
    throw std::invalid_argument("unknown base metric \"" + std::string(id) + "\"");
}

struct TransformReports {
    DefectReport log_form;
    DefectReport th_form;
};

/// Checks that log(1+d) and th(d/2) of a true metric keep the triangle
/// inequality on n sampled triples.
inline TransformReports transform_check(BaseMetric base, const Domain& domain, std::uint64_t n,
                                        std::uint64_t seed) {
    auto base_dist = [&](const Point& a, const Point& b) {
        return base == BaseMetric::triangular_ratio ? triangular_ratio(domain, a, b)
                                                    : hyperbolic_dist(domain, a, b);
    };
    const std::string name = to_string(base);
    auto log_dist = [&](const Point& a, const Point& b) { return std::log1p(base_dist(a, b)); };
    auto th_dist = [&](const Point& a, const Point& b) { return std::tanh(0.5 * base_dist(a, b)); };
    return {detail::run_triangle_sweep("log1p(" + name + ") on " + to_string(domain.kind()),
                                       std::nullopt, domain, n, seed, log_dist, false),
            detail::run_triangle_sweep("th(" + name + "/2) on " + to_string(domain.kind()),
                                       std::nullopt, domain, n, seed, th_dist, false)};
}

/// Recomputes the defect of a reported witness from scratch.
inline double reevaluate_witness(const MetricSpec& spec, const Domain& domain,
                                 const std::array<Point, 3>& w) {
    return triangle_defect(spec, domain, w[0], w[1], w[2]);
}

} // namespace imetric
