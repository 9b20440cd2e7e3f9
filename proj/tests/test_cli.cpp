#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "imetric/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string tmp_path(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "imetric_cli_tests";
    fs::create_directories(dir);
    return (dir / name).string();
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "imetric");
    return imetric::cli::run(args);
}

} // namespace

TEST_CASE("check-axioms: pass and fail exit codes follow the report") {
    const auto ok_path = tmp_path("axioms_ok.json");
    CHECK(run({"check-axioms", "--domain", "ball", "--mean", "arithmetic", "--form", "th", "--c",
               "1", "--samples", "20000", "--seed", "42", "--out", ok_path}) == 0);
    const auto ok = read_json(ok_path);
    CHECK(ok["schema_version"] == "1");
    CHECK(ok["subcommand"] == "check-axioms");
    CHECK(ok["results"]["violations"] == 0);
    CHECK(ok["pass"] == true);
    CHECK(ok["witnesses"].empty());

    const auto bad_path = tmp_path("axioms_bad.json");
    CHECK(run({"check-axioms", "--domain", "ball", "--mean", "arithmetic", "--form", "log", "--c",
               "1", "--samples", "20000", "--seed", "42", "--out", bad_path}) == 2);
    const auto bad = read_json(bad_path);
    CHECK(bad["results"]["violations"].get<std::uint64_t>() > 0);
    CHECK(bad["pass"] == false);
    CHECK(bad["witnesses"].size() == 1);
}

TEST_CASE("reproduce emits the counterexample defects") {
    const auto path = tmp_path("reproduce.json");
    CHECK(run({"reproduce", "--lemma", "L4.3", "--c", "1", "--param", "0.99", "--out", path}) ==
          0);
    const auto j = read_json(path);
    CHECK(j["results"]["defect_direct"].get<double>() == doctest::Approx(-1.8459259861));
    CHECK(j["results"]["negative"] == true);
    CHECK(j["pass"] == true);

    // per-case default parameter
    const auto path2 = tmp_path("reproduce_default.json");
    CHECK(run({"reproduce", "--lemma", "L3.3", "--out", path2}) == 0);
    CHECK(read_json(path2)["results"]["param"].get<double>() == 0.01);
}

TEST_CASE("bounds: tolerance decides the exit code") {
    const auto path = tmp_path("bounds.json");
    CHECK(run({"bounds", "--theorem", "T5.2", "--c", "1", "--tol", "5e-3", "--grid", "256",
               "--out", path}) == 0);
    const auto j = read_json(path);
    const auto& rep = j["results"]["reports"][0];
    CHECK(rep["inf_found"].get<double>() == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(rep["sup_found"].get<double>() == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(j["pass"] == true);

    // a tolerance below the clamped-box gap cannot be met
    CHECK(run({"bounds", "--theorem", "T5.2", "--c", "1", "--tol", "1e-12", "--grid", "128",
               "--out", tmp_path("bounds_tight.json")}) == 2);
}

TEST_CASE("bounds csv carries one row per c") {
    const auto path = tmp_path("bounds.csv");
    CHECK(run({"bounds", "--theorem", "T5.2", "--c-grid", "0.5,1,2", "--tol", "5e-3", "--grid",
               "128", "--format", "csv", "--out", path}) == 0);
    const auto text = read_text(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4); // header + 3 rows
    CHECK(text.find("T5.2") != std::string::npos);

    // with neither --c nor --c-grid, the sweep covers both regime boundaries
    const auto dpath = tmp_path("bounds_default.csv");
    CHECK(run({"bounds", "--theorem", "T5.2", "--tol", "5e-3", "--grid", "128", "--format", "csv",
               "--out", dpath}) == 0);
    const auto dtext = read_text(dpath);
    CHECK(std::count(dtext.begin(), dtext.end(), '\n') == 6); // header + c in {0.25,0.5,1,2,4}
}

TEST_CASE("compare and distort run end to end") {
    CHECK(run({"compare", "--domain", "punctured", "--c", "1", "--samples", "20000", "--seed",
               "42", "--out", tmp_path("compare.json")}) == 0);

    const auto spath = tmp_path("schwarz.json");
    CHECK(run({"distort", "--map", "mobius", "--a", "0.3,0.1", "--check", "schwarz", "--pairs",
               "5000", "--seed", "42", "--out", spath}) == 0);
    const auto s = read_json(spath);
    CHECK(s["results"]["holds_1"] == true);
    CHECK(s["results"]["max_ratio_1"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(run({"distort", "--map", "vstretch", "--K", "2", "--check", "corollary", "--family",
               "log-mean", "--c", "1", "--pairs", "5000", "--seed", "42", "--out",
               tmp_path("corollary.json")}) == 0);

    CHECK(run({"distort", "--map", "zpow", "--m", "3", "--check", "schwarz", "--pairs", "5000",
               "--seed", "42", "--out", tmp_path("zpow.json")}) == 0);
}

TEST_CASE("search outcome assertions") {
    // nothing to find at the threshold: --expect none passes
    CHECK(run({"search", "--domain", "punctured", "--mean", "power", "--d", "0.333333333333333",
               "--form", "raw", "--budget", "20000", "--seed", "42", "--expect", "none", "--out",
               tmp_path("search_none.json")}) == 0);
    // and demanding a witness there fails with exit 2
    CHECK(run({"search", "--domain", "punctured", "--mean", "power", "--d", "1", "--form", "raw",
               "--budget", "5000", "--seed", "42", "--expect", "found", "--out",
               tmp_path("search_found.json")}) == 2);
}

TEST_CASE("explore emits json and csv forms") {
    const auto jpath = tmp_path("explore.json");
    CHECK(run({"explore", "--conjecture", "C4.4", "--c-grid", "0.5,1", "--samples", "5000",
               "--seed", "42", "--out", jpath}) == 0);
    const auto j = read_json(jpath);
    CHECK(j["results"]["cells"].size() == 4); // 2 domains x 2 c values

    // beyond c = 1 the log-mean th form genuinely breaks the triangle
    // inequality (near-diameter triples), so the explorer must say so
    const auto vpath = tmp_path("explore_violating.json");
    CHECK(run({"explore", "--conjecture", "C4.4", "--c-grid", "2", "--samples", "20000", "--seed",
               "42", "--out", vpath}) == 2);
    const auto v = read_json(vpath);
    CHECK(v["results"]["conjecture_consistent"] == false);
    std::uint64_t total = 0;
    for (const auto& cell : v["results"]["cells"]) total += cell["violations"].get<std::uint64_t>();
    CHECK(total > 0);

    const auto cpath = tmp_path("explore.csv");
    CHECK(run({"explore", "--conjecture", "C3.7", "--c-grid", "1", "--d-grid", "1", "--samples",
               "5000", "--seed", "42", "--format", "csv", "--out", cpath}) == 0);
    const auto text = read_text(cpath);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7); // header + 6 cells
    CHECK(text.rfind("conjecture,domain,c,d,form", 0) == 0);
}

TEST_CASE("sweep dumps a quotient grid") {
    const auto path = tmp_path("sweep.csv");
    CHECK(run({"sweep", "--quotient", "h-arith", "--c", "1", "--grid", "16", "--out", path}) == 0);
    const auto text = read_text(path);
    // header + (16 log-spaced k values + k = 0) * 16 h values
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 17 * 16);
    CHECK(text.rfind("k,h,value", 0) == 0);
}

TEST_CASE("replay reproduces the identical run from the emitted config") {
    const auto first = tmp_path("first.json");
    CHECK(run({"check-axioms", "--domain", "half-plane", "--mean", "logarithmic", "--form", "th",
               "--c", "0.5", "--samples", "20000", "--seed", "7", "--out", first}) == 0);
    const auto second = tmp_path("second.json");
    CHECK(run({"replay", "--config", first, "--out", second}) == 0);

    const auto a = read_json(first);
    const auto b = read_json(second);
    CHECK(a["results"] == b["results"]);
    CHECK(a["witnesses"] == b["witnesses"]);
    CHECK(a["pass"] == b["pass"]);
    CHECK(a["config"]["seed"] == b["config"]["seed"]);

    // and a second replay of the replay is still identical
    const auto third = tmp_path("third.json");
    CHECK(run({"replay", "--config", second, "--out", third}) == 0);
    CHECK(read_json(third)["results"] == b["results"]);
}

TEST_CASE("reports are byte-identical under any worker count") {
    const auto one = tmp_path("threads_one.json");
    const auto four = tmp_path("threads_four.json");
    setenv("IMETRIC_THREADS", "1", 1);
    CHECK(run({"check-axioms", "--domain", "ball", "--mean", "logarithmic", "--form", "log",
               "--c", "1", "--samples", "30000", "--seed", "11", "--out", one}) == 2);
    setenv("IMETRIC_THREADS", "4", 1);
    CHECK(run({"check-axioms", "--domain", "ball", "--mean", "logarithmic", "--form", "log",
               "--c", "1", "--samples", "30000", "--seed", "11", "--out", four}) == 2);
    unsetenv("IMETRIC_THREADS");
    auto a = read_json(one);
    auto b = read_json(four);
    a["config"].erase("out"); // the only field that legitimately differs
    b["config"].erase("out");
    CHECK(a == b);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run({"no-such-subcommand"}) == 1);
    CHECK(run({"check-axioms", "--no-such-flag", "1"}) == 1);
    CHECK(run({"check-axioms", "--domain", "torus"}) == 1);
    CHECK(run({"reproduce", "--lemma", "L4.3", "--param", "7"}) == 1);  // out of range
    CHECK(run({"check-axioms", "--out", "/nonexistent-dir/x/y.json", "--samples", "10"}) == 1);
    CHECK(run({"compare", "--format", "csv", "--samples", "10"}) == 1); // no CSV form
    CHECK(run({"replay", "--config", "/nonexistent-dir/missing.json"}) == 1);
}

TEST_CASE("floating-point fields carry 17 significant digits") {
    const auto path = tmp_path("digits.json");
    CHECK(run({"reproduce", "--lemma", "L3.4", "--c", "1", "--param", "0.99", "--out", path}) ==
          0);
    const auto text = read_text(path);
    // the defect -3.23877648... must appear with its full mantissa
    CHECK(text.find("-3.238776486") != std::string::npos);
    const auto j = read_json(path);
    const double direct = j["results"]["defect_direct"].get<double>();
    const double closed = j["results"]["defect_closed_form"].get<double>();
    CHECK(std::fabs(direct - closed) <= 1e-9 * std::fabs(closed));
}
