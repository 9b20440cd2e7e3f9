#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "imetric/bounds.hpp"
#include "imetric/distortion.hpp"
#include "imetric/harness.hpp"
#include "imetric/report.hpp"

namespace imetric::cli {

/// Everything a run needs; serialized into each report so that `replay`
/// can reproduce it bit for bit.
struct RunConfig {
    std::string subcommand;

    std::string domain = "ball";
    int dim = 2;
    std::string mean = "arithmetic";
    double power_d = 1.0;
    double c = 1.0;
    std::string form = "th";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 42;

    std::uint64_t budget = 1000000;
    std::string expect; // "", "found", "none"

    std::string lemma = "L3.4";
    double param = -1.0; // <0: per-case default (0.99; 0.01 for L3.3)

    std::string theorem = "T5.2";
    double tol = 5e-3;
    std::uint64_t grid = 1024;

    std::string conjecture = "C3.7";
    std::vector<double> c_grid;
    std::vector<double> d_grid;

    std::string map = "mobius";
    std::vector<double> mobius_a = {0.3, 0.0};
    int power_m = 2;
    double K = 2.0;
    std::string check = "schwarz";
    std::string family = "arith";
    std::uint64_t pairs = 10000;

    std::string quotient = "h-arith";

    std::string out = "-";
    std::string format = "json";
};

namespace detail {

inline Domain parse_domain(const std::string& name, int dim) {
    if (dim < 2) throw std::invalid_argument("--dim must be >= 2");
    const auto n = static_cast<std::size_t>(dim);
    if (name == "half-plane") return Domain::half_space(n);
    if (name == "ball") return Domain::unit_ball(n);
    if (name == "punctured") return Domain::punctured_space(n);
    throw std::invalid_argument("unknown domain \"" + name + "\"");
}

inline MeanKind parse_mean(const std::string& name, double power_d) {
    if (name == "arithmetic") return MeanKind::arithmetic();
    if (name == "power") return MeanKind::power(power_d);
    if (name == "logarithmic") return MeanKind::logarithmic();
    if (name == "min") return MeanKind::min();
    if (name == "max") return MeanKind::max();
    if (name == "geometric") return MeanKind::geometric();
    throw std::invalid_argument("unknown mean \"" + name + "\"");
}

inline MetricForm parse_form(const std::string& name) {
    if (name == "raw") return MetricForm::raw;
    if (name == "log") return MetricForm::log;
    if (name == "th") return MetricForm::th;
    throw std::invalid_argument("unknown form \"" + name + "\"");
}

inline BoundCase parse_quotient(const std::string& name) {
    if (name == "h-arith") return BoundCase::arith_half_plane;
    if (name == "b-arith") return BoundCase::arith_ball;
    if (name == "h-log") return BoundCase::logmean_half_plane;
    if (name == "b-log") return BoundCase::logmean_ball;
    throw std::invalid_argument("unknown quotient \"" + name + "\"");
}

inline MetricSpec spec_from(const RunConfig& cfg) {
    return {parse_mean(cfg.mean, cfg.power_d), cfg.c, parse_form(cfg.form)};
}

inline QRMap map_from(const RunConfig& cfg) {
    if (cfg.map == "mobius") {
        if (cfg.mobius_a.size() != 2)
            throw std::invalid_argument("--a needs exactly two coordinates");
        return QRMap::mobius(Point{cfg.mobius_a[0], cfg.mobius_a[1]});
    }
    if (cfg.map == "zpow") return QRMap::power(cfg.power_m);
    if (cfg.map == "vstretch") return QRMap::vertical_stretch(cfg.K);
    if (cfg.map == "rstretch") return QRMap::radial_stretch(cfg.K);
    throw std::invalid_argument("unknown map \"" + cfg.map + "\"");
}

inline report::Json point_json(const Point& p) {
    auto arr = report::Json::array();
    for (std::size_t i = 0; i < p.dim(); ++i) arr.push(p[i]);
    return arr;
}

inline report::Json triple_json(const std::array<Point, 3>& t) {
    auto arr = report::Json::array();
    for (const auto& p : t) arr.push(point_json(p));
    return arr;
}

inline report::Json param_record_json(const ParamRecord& rec) {
    auto obj = report::Json::object();
    for (const auto& [name, value] : rec.values) obj.set(name, value);
    return obj;
}

inline report::Json double_list_json(const std::vector<double>& v) {
    auto arr = report::Json::array();
    for (double x : v) arr.push(x);
    return arr;
}

inline std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty number list \"" + text + "\"");
    return out;
}

struct RunOutput {
    report::Json results = report::Json::object();
    report::Json witnesses = report::Json::array();
    bool pass = true;
    std::optional<std::string> csv;
};

inline report::Json defect_report_json(const DefectReport& rep) {
    auto j = report::Json::object();
    j.set("label", rep.label)
        .set("samples", rep.samples)
        .set("seed", rep.seed)
        .set("violations", rep.violations)
        .set("noise", rep.noise)
        .set("min_defect", rep.min_defect)
        .set("symmetry_failures", rep.symmetry_failures)
        .set("identity_failures", rep.identity_failures);
    return j;
}

// --- subcommand runners ----------------------------------------------------

inline RunOutput run_check_axioms(const RunConfig& cfg) {
    const Domain domain = parse_domain(cfg.domain, cfg.dim);
    const MetricSpec spec = spec_from(cfg);
    const DefectReport rep = sample_axiom_check(spec, domain, cfg.samples, cfg.seed);

    RunOutput out;
    out.results = defect_report_json(rep);
    if (rep.witness) out.witnesses.push(triple_json(*rep.witness));
    out.pass = rep.violations == 0 && rep.symmetry_failures == 0 && rep.identity_failures == 0;
    return out;
}

inline RunOutput run_reproduce(const RunConfig& cfg) {
    const CounterexampleCase which = parse_counterexample_case(cfg.lemma);
    const double param =
        cfg.param >= 0.0 ? cfg.param
                         : (which == CounterexampleCase::flat_boundary_arith ? 0.01 : 0.99);
    const CounterexampleResult res = reproduce_counterexample(which, cfg.c, param);
    const double gap = std::fabs(res.defect_direct - res.defect_closed_form) /
                       std::fabs(res.defect_closed_form);

    RunOutput out;
    out.results.set("lemma", cfg.lemma)
        .set("c", cfg.c)
        .set("param", param)
        .set("defect_direct", res.defect_direct)
        .set("defect_closed_form", res.defect_closed_form)
        .set("relative_gap", gap)
        .set("negative", res.defect_direct < 0.0);
    out.witnesses.push(triple_json(res.points));
    out.pass = res.defect_direct < 0.0 && gap <= 1e-9;
    return out;
}

inline RunOutput run_search(const RunConfig& cfg) {
    const Domain domain = parse_domain(cfg.domain, cfg.dim);
    const MetricSpec spec = spec_from(cfg);
    const SearchOutcome res = search_counterexample(spec, domain, cfg.budget, cfg.seed);

    RunOutput out;
    out.results.set("found", res.witness.has_value()).set("evaluations", res.evaluations);
    if (res.witness) {
        out.results.set("defect", res.defect);
        out.witnesses.push(triple_json(*res.witness));
    }
    if (cfg.expect == "found") out.pass = res.witness.has_value();
    if (cfg.expect == "none") out.pass = !res.witness.has_value();
    return out;
}

inline RunOutput run_explore(const RunConfig& cfg) {
    const ConjectureId id = parse_conjecture_id(cfg.conjecture);
    std::vector<double> cs = cfg.c_grid.empty() ? std::vector<double>{cfg.c} : cfg.c_grid;
    std::vector<double> ds = cfg.d_grid.empty() ? std::vector<double>{1.0} : cfg.d_grid;
    const auto cells = explore_conjecture(id, cs, ds, cfg.samples, cfg.seed);

    RunOutput out;
    auto arr = report::Json::array();
    report::Csv csv({"conjecture", "domain", "c", "d", "form", "samples", "seed", "violations",
                     "noise", "min_defect"});
    bool consistent = true;
    for (const auto& cell : cells) {
        auto j = report::Json::object();
        j.set("domain", to_string(cell.domain.kind())).set("c", cell.c);
        if (cell.d) j.set("d", *cell.d);
        j.set("form", to_string(cell.form))
            .set("violations", cell.report.violations)
            .set("noise", cell.report.noise)
            .set("min_defect", cell.report.min_defect);
        arr.push(std::move(j));

        csv.new_row()
            .add(std::string(to_string(id)))
            .add(std::string(to_string(cell.domain.kind())))
            .add(cell.c)
            .add(cell.d ? report::format_double(*cell.d) : std::string(""))
            .add(std::string(to_string(cell.form)))
            .add(cell.report.samples)
            .add(cell.report.seed)
            .add(cell.report.violations)
            .add(cell.report.noise)
            .add(cell.report.min_defect);

        // the conjectured-metric cells: th form always; others only for C4.4
        if (cell.form == MetricForm::th && cell.report.violations > 0) consistent = false;
    }
    out.results.set("cells", std::move(arr));
    out.results.set("conjecture_consistent", consistent);
    out.pass = consistent;
    out.csv = csv.dump();
    return out;
}

inline RunOutput run_bounds(const RunConfig& cfg) {
    const BoundCase which = parse_bound_case(cfg.theorem);
    const std::vector<double> cs = cfg.c_grid.empty() ? std::vector<double>{cfg.c} : cfg.c_grid;

    RunOutput out;
    auto arr = report::Json::array();
    report::Csv csv({"theorem", "c", "inf_expected", "inf_found", "sup_expected", "sup_found",
                     "lower_holds", "upper_holds", "lower_sharp_asserted", "lower_sharp",
                     "upper_sharp", "tolerance_met"});
    bool all_ok = true;
    for (double c : cs) {
        const BoundReport rep = verify_theorem_bounds(which, c, cfg.tol, cfg.grid, true);
        all_ok = all_ok && rep.tolerance_met;
        auto j = report::Json::object();
        j.set("theorem", std::string(to_string(rep.which)))
            .set("c", rep.c)
            .set("tol", rep.tol)
            .set("inf_expected", rep.inf_expected)
            .set("inf_found", rep.inf_found)
            .set("sup_expected", rep.sup_expected)
            .set("sup_found", rep.sup_found)
            .set("arg_inf", param_record_json(rep.arg_inf))
            .set("arg_sup", param_record_json(rep.arg_sup))
            .set("lower_holds", rep.lower_holds)
            .set("upper_holds", rep.upper_holds)
            .set("lower_sharp_asserted", rep.lower_sharp_asserted)
            .set("lower_sharp", rep.lower_sharp)
            .set("upper_sharp", rep.upper_sharp)
            .set("tolerance_met", rep.tolerance_met);
        arr.push(std::move(j));
        csv.new_row()
            .add(std::string(to_string(rep.which)))
            .add(rep.c)
            .add(rep.inf_expected)
            .add(rep.inf_found)
            .add(rep.sup_expected)
            .add(rep.sup_found)
            .add(std::uint64_t(rep.lower_holds))
            .add(std::uint64_t(rep.upper_holds))
            .add(std::uint64_t(rep.lower_sharp_asserted))
            .add(std::uint64_t(rep.lower_sharp))
            .add(std::uint64_t(rep.upper_sharp))
            .add(std::uint64_t(rep.tolerance_met));
    }
    out.results.set("reports", std::move(arr));
    out.pass = all_ok;
    out.csv = csv.dump();
    return out;
}

inline RunOutput run_compare(const RunConfig& cfg) {
    const Domain domain = parse_domain(cfg.domain, cfg.dim);
    const std::uint64_t bad = comparison_check(domain, cfg.c, cfg.samples, cfg.seed);
    RunOutput out;
    out.results.set("violations", bad).set("samples", cfg.samples).set("c", cfg.c);
    out.pass = bad == 0;
    return out;
}

inline RunOutput run_distort(const RunConfig& cfg) {
    const QRMap map = map_from(cfg);
    RunOutput out;
    out.results.set("map", std::string(to_string(map.kind))).set("K", map.K);
    if (cfg.check == "schwarz") {
        const SchwarzReport rep = schwarz_check(map, cfg.pairs, cfg.seed);
        out.results.set("alpha", rep.alpha)
            .set("max_ratio_1", rep.max_ratio_1)
            .set("holds_1", rep.holds_1)
            .set("holds_2", rep.holds_2)
            .set("holds_2_standard", rep.holds_2_standard)
            .set("pairs", rep.pairs);
        out.pass = rep.holds_1 && rep.holds_2;
    } else if (cfg.check == "corollary") {
        const CorollaryReport rep =
            corollary_check(map, cfg.c, parse_metric_family(cfg.family), cfg.pairs, cfg.seed);
        out.results.set("inequality", rep.inequality)
            .set("c", rep.c)
            .set("family", cfg.family)
            .set("max_slack", rep.max_slack)
            .set("holds", rep.holds)
            .set("pairs", rep.pairs);
        out.pass = rep.holds;
    } else {
        throw std::invalid_argument("unknown check \"" + cfg.check + "\"");
    }
    return out;
}

inline RunOutput run_sweep(const RunConfig& cfg) {
    const BoundCase which = parse_quotient(cfg.quotient);
    const auto axes = imetric::detail::bound_axes(which);
    const std::size_t res = static_cast<std::size_t>(cfg.grid);
    const bool ball = is_ball_case(which);

    std::vector<std::string> header;
    for (const auto& ax : axes) header.push_back(ax.name);
    header.push_back("value");
    report::Csv csv(header);

    std::uint64_t total = 1;
    for (const auto& ax : axes) total *= ax.count(res);
    for (std::uint64_t i = 0; i < total; ++i) {
        const auto p = imetric::detail::grid_point(axes, res, i);
        if (ball && p[1] > p[0]) continue;
        auto& row = csv.new_row();
        for (double v : p) row.add(v);
        row.add(bound_quotient(which, cfg.c, p));
    }

    RunOutput out;
    out.csv = csv.dump();
    out.results.set("rows_emitted", true);
    return out;
}

// --- emit and dispatch -------------------------------------------------------

inline report::Json config_json(const RunConfig& cfg) {
    auto j = report::Json::object();
    j.set("subcommand", cfg.subcommand);
    const std::string& s = cfg.subcommand;
    if (s == "check-axioms" || s == "search" || s == "compare") {
        j.set("domain", cfg.domain).set("dim", cfg.dim);
    }
    if (s == "check-axioms" || s == "search") {
        j.set("mean", cfg.mean);
        if (cfg.mean == "power") j.set("power_d", cfg.power_d);
        j.set("form", cfg.form);
    }
    if (s == "check-axioms" || s == "search" || s == "compare" || s == "reproduce" ||
        s == "bounds" || s == "distort" || s == "sweep" || s == "explore")
        j.set("c", cfg.c);
    if (s == "check-axioms" || s == "compare" || s == "explore") j.set("samples", cfg.samples);
    if (s == "search") {
        j.set("budget", cfg.budget);
        j.set("expect", cfg.expect);
    }
    if (s == "reproduce") {
        j.set("lemma", cfg.lemma);
        j.set("param", cfg.param);
    }
    if (s == "bounds") {
        j.set("theorem", cfg.theorem);
        j.set("tol", cfg.tol);
        j.set("grid", cfg.grid);
        j.set("c_grid", double_list_json(cfg.c_grid));
    }
    if (s == "explore") {
        j.set("conjecture", cfg.conjecture);
        j.set("c_grid", double_list_json(cfg.c_grid));
        j.set("d_grid", double_list_json(cfg.d_grid));
    }
    if (s == "distort") {
        j.set("map", cfg.map);
        if (cfg.map == "mobius") j.set("mobius_a", double_list_json(cfg.mobius_a));
        if (cfg.map == "zpow") j.set("power_m", cfg.power_m);
        if (cfg.map == "vstretch" || cfg.map == "rstretch") j.set("K", cfg.K);
        j.set("check", cfg.check);
        if (cfg.check == "corollary") j.set("family", cfg.family);
        j.set("pairs", cfg.pairs);
    }
    if (s == "sweep") {
        j.set("quotient", cfg.quotient);
        j.set("grid", cfg.grid);
    }
    if (s != "reproduce" && s != "bounds" && s != "sweep") j.set("seed", cfg.seed);
    j.set("format", cfg.format).set("out", cfg.out);
    return j;
}

/// Serializes the finished run. Exit-code contract: the caller returns 2
/// exactly when `pass` is false.
inline int emit_report(const RunConfig& cfg, const RunOutput& out) {
    std::string text;
    if (cfg.format == "csv") {
        if (!out.csv) {
            std::cerr << "error: subcommand \"" << cfg.subcommand << "\" has no CSV form\n";
            return 1;
        }
        text = *out.csv;
    } else {
        auto j = report::Json::object();
        j.set("schema_version", "1")
            .set("subcommand", cfg.subcommand)
            .set("config", config_json(cfg))
            .set("results", out.results)
            .set("witnesses", out.witnesses)
            .set("pass", out.pass);
        text = j.dump() + "\n";
    }

    if (cfg.out == "-" || cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open \"" << cfg.out << "\" for writing\n";
            return 1;
        }
        file << text;
        if (!file) {
            std::cerr << "error: failed writing \"" << cfg.out << "\"\n";
            return 1;
        }
    }
    return out.pass ? 0 : 2;
}

inline RunOutput dispatch(const RunConfig& cfg) {
    const std::string& s = cfg.subcommand;
    if (s == "check-axioms") return run_check_axioms(cfg);
    if (s == "reproduce") return run_reproduce(cfg);
    if (s == "search") return run_search(cfg);
    if (s == "explore") return run_explore(cfg);
    if (s == "bounds") return run_bounds(cfg);
    if (s == "compare") return run_compare(cfg);
    if (s == "distort") return run_distort(cfg);
    if (s == "sweep") return run_sweep(cfg);
    throw std::invalid_argument("unknown subcommand \"" + s + "\"");
}

/// Rebuilds a RunConfig from the "config" block of an emitted report.
inline RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.subcommand = j.at("subcommand").get<std::string>();
    cfg.domain = j.value("domain", cfg.domain);
    cfg.dim = j.value("dim", cfg.dim);
    cfg.mean = j.value("mean", cfg.mean);
    cfg.power_d = j.value("power_d", cfg.power_d);
    cfg.c = j.value("c", cfg.c);
    cfg.form = j.value("form", cfg.form);
    cfg.samples = j.value("samples", cfg.samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.budget = j.value("budget", cfg.budget);
    cfg.expect = j.value("expect", cfg.expect);
    cfg.lemma = j.value("lemma", cfg.lemma);
    cfg.param = j.value("param", cfg.param);
    cfg.theorem = j.value("theorem", cfg.theorem);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.grid = j.value("grid", cfg.grid);
    cfg.conjecture = j.value("conjecture", cfg.conjecture);
    if (j.contains("c_grid")) cfg.c_grid = j["c_grid"].get<std::vector<double>>();
    if (j.contains("d_grid")) cfg.d_grid = j["d_grid"].get<std::vector<double>>();
    cfg.map = j.value("map", cfg.map);
    if (j.contains("mobius_a")) cfg.mobius_a = j["mobius_a"].get<std::vector<double>>();
    cfg.power_m = j.value("power_m", cfg.power_m);
    cfg.K = j.value("K", cfg.K);
    cfg.check = j.value("check", cfg.check);
    cfg.family = j.value("family", cfg.family);
    cfg.pairs = j.value("pairs", cfg.pairs);
    cfg.quotient = j.value("quotient", cfg.quotient);
    cfg.format = j.value("format", cfg.format);
    return cfg;
}

} // namespace detail

/// Entry point behind main(). Returns 0 on pass, 1 on usage or I/O errors,
/// 2 when the run completed but its assertion failed.
inline int run(int argc, const char* const* argv) {
    using namespace detail;

    CLI::App app{"mean-value intrinsic metrics: numerical verification toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string c_grid_text, d_grid_text, mobius_a_text;
    std::string config_path;

    auto add_common = [&](CLI::App* sub, bool with_format = true) {
        sub->add_option("--out", cfg.out, "output path, or - for stdout");
        if (with_format)
            sub->add_option("--format", cfg.format, "report format")
                ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_domain = [&](CLI::App* sub) {
        sub->add_option("--domain", cfg.domain, "domain")
            ->check(CLI::IsMember({"half-plane", "ball", "punctured"}));
        sub->add_option("--dim", cfg.dim, "ambient dimension")->check(CLI::Range(2, 16));
    };
    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--mean", cfg.mean, "mean kind")
            ->check(CLI::IsMember({"arithmetic", "power", "logarithmic", "min", "max", "geometric"}));
        sub->add_option("--d", cfg.power_d, "power-mean exponent");
        sub->add_option("--c", cfg.c, "family constant c > 0");
        sub->add_option("--form", cfg.form, "metric form")->check(CLI::IsMember({"raw", "log", "th"}));
    };

    auto* check = app.add_subcommand("check-axioms", "sample triangle/symmetry/identity axioms");
    add_domain(check);
    add_spec(check);
    check->add_option("--samples", cfg.samples, "triples to draw")->check(CLI::PositiveNumber);
    check->add_option("--seed", cfg.seed, "RNG seed");
    add_common(check);

    auto* repro = app.add_subcommand("reproduce", "evaluate a known counterexample configuration");
    repro->add_option("--lemma", cfg.lemma, "case id")
        ->check(CLI::IsMember({"L3.3", "L3.4", "L4.2", "L4.3"}));
    repro->add_option("--c", cfg.c, "family constant c > 0");
    repro->add_option("--param", cfg.param, "configuration parameter (k, or h for L3.3)");
    add_common(repro);

    auto* search = app.add_subcommand("search", "hunt for a triangle-inequality violation");
    add_domain(search);
    add_spec(search);
    search->add_option("--budget", cfg.budget, "max defect evaluations")->check(CLI::PositiveNumber);
    search->add_option("--seed", cfg.seed, "RNG seed");
    search->add_option("--expect", cfg.expect, "assert the outcome")
        ->check(CLI::IsMember({"found", "none"}));
    add_common(search);

    auto* explore = app.add_subcommand("explore", "sweep a conjecture grid");
    explore->add_option("--conjecture", cfg.conjecture, "conjecture id")
        ->check(CLI::IsMember({"C3.7", "C4.4"}));
    explore->add_option("--c-grid", c_grid_text, "comma-separated c values");
    explore->add_option("--d-grid", d_grid_text, "comma-separated power exponents");
    explore->add_option("--c", cfg.c, "single c (if no grid)");
    explore->add_option("--samples", cfg.samples, "triples per cell")->check(CLI::PositiveNumber);
    explore->add_option("--seed", cfg.seed, "RNG seed");
    add_common(explore);

    auto* bounds = app.add_subcommand("bounds", "verify sharp comparison constants");
    bounds->add_option("--theorem", cfg.theorem, "case id")
        ->check(CLI::IsMember({"T5.2", "T5.3", "T5.5", "T5.6"}));
    bounds->add_option("--c", cfg.c, "family constant c > 0");
    bounds->add_option("--c-grid", c_grid_text, "comma-separated c values");
    bounds->add_option("--tol", cfg.tol, "tolerance on the constants");
    bounds->add_option("--grid", cfg.grid, "grid resolution per axis")->check(CLI::PositiveNumber);
    add_common(bounds);

    auto* compare = app.add_subcommand("compare", "log-mean vs arithmetic th-form dominance");
    add_domain(compare);
    compare->add_option("--c", cfg.c, "family constant c > 0");
    compare->add_option("--samples", cfg.samples, "pairs to draw")->check(CLI::PositiveNumber);
    compare->add_option("--seed", cfg.seed, "RNG seed");
    add_common(compare);

    auto* distort = app.add_subcommand("distort", "quasiregular distortion checks");
    distort->add_option("--map", cfg.map, "map kind")
        ->check(CLI::IsMember({"mobius", "zpow", "vstretch", "rstretch"}));
    distort->add_option("--a", mobius_a_text, "mobius parameter, e.g. 0.3,0.1");
    distort->add_option("--m", cfg.power_m, "power exponent")->check(CLI::PositiveNumber);
    distort->add_option("--K", cfg.K, "dilatation");
    distort->add_option("--check", cfg.check, "which inequality set")
        ->check(CLI::IsMember({"schwarz", "corollary"}));
    distort->add_option("--family", cfg.family, "metric family for corollary")
        ->check(CLI::IsMember({"arith", "log-mean"}));
    distort->add_option("--c", cfg.c, "family constant c > 0");
    distort->add_option("--pairs", cfg.pairs, "pairs to draw")->check(CLI::PositiveNumber);
    distort->add_option("--seed", cfg.seed, "RNG seed");
    add_common(distort);

    auto* sweep = app.add_subcommand("sweep", "dump a quotient grid as CSV");
    sweep->add_option("--quotient", cfg.quotient, "quotient id")
        ->check(CLI::IsMember({"h-arith", "b-arith", "h-log", "b-log"}));
    sweep->add_option("--c", cfg.c, "family constant c > 0");
    sweep->add_option("--grid", cfg.grid, "grid resolution per axis")->check(CLI::PositiveNumber);
    sweep->add_option("--out", cfg.out, "output path, or - for stdout");

    auto* replay = app.add_subcommand("replay", "re-run the config block of an emitted report");
    replay->add_option("--config", config_path, "report or config JSON")->required();
    add_common(replay);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.subcommand = sub->get_name();
        if (!c_grid_text.empty()) cfg.c_grid = parse_double_list(c_grid_text);
        if (!d_grid_text.empty()) cfg.d_grid = parse_double_list(d_grid_text);
        if (!mobius_a_text.empty()) cfg.mobius_a = parse_double_list(mobius_a_text);
        if (cfg.subcommand == "sweep") cfg.format = "csv";

        if (cfg.subcommand == "replay") {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read \"" << config_path << "\"\n";
                return 1;
            }
            nlohmann::json doc = nlohmann::json::parse(in);
            const nlohmann::json& block = doc.contains("config") ? doc["config"] : doc;
            RunConfig replayed = config_from_json(block);
            replayed.out = cfg.out;
            if (sub->count("--format")) replayed.format = cfg.format;
            return emit_report(replayed, dispatch(replayed));
        }

        if (cfg.subcommand == "reproduce" && cfg.param < 0.0)
            cfg.param = cfg.lemma == "L3.3" ? 0.01 : 0.99;

        // default c sweep crosses both regime boundaries of the constants
        if (cfg.subcommand == "bounds" && cfg.c_grid.empty() && sub->count("--c") == 0)
            cfg.c_grid = {0.25, 0.5, 1.0, 2.0, 4.0};

        return emit_report(cfg, dispatch(cfg));
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace imetric::cli
