#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wprad/io.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;
using namespace wprad;

namespace {

namespace fs = std::filesystem;

std::string tmp_path(const std::string& name) {
    return (fs::temp_directory_path() / ("wprad_io_" + name)).string();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("g17 formatting round-trips doubles exactly") {
    for (double v : {0.1, pi, 1e-300, -1.0 / 3.0, 6.02214076e23, 0.0}) {
        std::string s = io::format_g17(v);
        REQUIRE(std::stod(s) == v);
    }
}

TEST_CASE("config file parsing") {
    auto path = tmp_path("parse.cfg");
    write_text(path,
               "# leading comment\n"
               "\n"
               "  electron.beta0 = 0.7  \n"
               "grating.n_periods=9\n"
               "modulation.enabled = true\n"
               "grating.m_list = 1,2,3\n"
               "run.label = fig4 check\n");
    auto cfg = io::Config::parse_file(path);
    REQUIRE(cfg.get_double("electron.beta0", 0.0) == 0.7);
    REQUIRE(cfg.get_int("grating.n_periods", 0) == 9);
    REQUIRE(cfg.get_bool("modulation.enabled", false));
    REQUIRE(cfg.get_int_list("grating.m_list", {}) == std::vector<int>{1, 2, 3});
    REQUIRE(cfg.get_string("run.label") == "fig4 check");
    REQUIRE(cfg.get_string("no.such.key", "dflt") == "dflt");
    REQUIRE(cfg.unused_keys().empty());

    REQUIRE_THROWS_AS(io::Config::parse_file(tmp_path("missing.cfg")), validation_error);

    auto bad = tmp_path("bad.cfg");
    write_text(bad, "a = 1\nb = 2\nthis line has no equals\n");
    REQUIRE_THROWS_MATCHES(io::Config::parse_file(bad), validation_error,
                           MessageMatches(ContainsSubstring(":3:")));
    write_text(bad, "= 1\n");
    REQUIRE_THROWS_MATCHES(io::Config::parse_file(bad), validation_error,
                           MessageMatches(ContainsSubstring("empty key")));
}

TEST_CASE("typed getters reject malformed values") {
    io::Config cfg;
    cfg.set("a.x", "not_a_number");
    cfg.set("a.n", "3.5");
    cfg.set("a.b", "maybe");
    cfg.set("a.list", "1,two");
    REQUIRE_THROWS_MATCHES(cfg.get_double("a.x", 0.0), validation_error,
                           MessageMatches(ContainsSubstring("not a number")));
    REQUIRE_THROWS_AS(cfg.get_int("a.n", 0), validation_error);
    REQUIRE_THROWS_AS(cfg.get_bool("a.b", false), validation_error);
    REQUIRE_THROWS_AS(cfg.get_int_list("a.list", {}), validation_error);
    REQUIRE_THROWS_MATCHES(cfg.require_double("a.missing"), validation_error,
                           MessageMatches(ContainsSubstring("missing key")));
}

TEST_CASE("config usage tracking and defaults") {
    io::Config cfg;
    cfg.set("one", "1");
    cfg.set("two", "2");
    cfg.set_if_absent("one", "overridden?");
    REQUIRE(cfg.get_string("one") == "1");
    auto unused = cfg.unused_keys();
    REQUIRE(unused == std::vector<std::string>{"two"});
    cfg.set("pi", pi);
    REQUIRE(cfg.get_double("pi", 0.0) == pi);
    REQUIRE(cfg.has("pi"));
    REQUIRE_FALSE(cfg.has("tau"));
}

TEST_CASE("binary grid round-trip") {
    auto path = tmp_path("grid.bin");
    std::vector<double> rows = {1.0, 2.0, 3.0};
    std::vector<double> cols = {10.0, 0.1};
    std::vector<double> vals = {1.5, -2.5, 3.5, 1e-300, pi, 6.5};
    io::write_binary_grid(path, rows, cols, vals);
    auto g = io::read_binary_grid(path);
    REQUIRE(g.row_axis == rows);
    REQUIRE(g.col_axis == cols);
    REQUIRE(g.values == vals);

    REQUIRE_THROWS_AS(io::write_binary_grid(path, rows, cols, {1.0}), validation_error);
    auto text = tmp_path("not_a_grid.bin");
    write_text(text, "hello, this is not a grid at all");
    REQUIRE_THROWS_MATCHES(io::read_binary_grid(text), validation_error,
                           MessageMatches(ContainsSubstring("not a grid file")));
    REQUIRE_THROWS_AS(io::read_binary_grid(tmp_path("absent.bin")), validation_error);
}

TEST_CASE("matrix csv layout") {
    auto path = tmp_path("matrix.csv");
    io::write_matrix_csv(path, "corner", {1.0, 2.0}, {10.0, 20.0, 30.0},
                         {0, 1, 2, 3, 4, 5});
    auto text = slurp(path);
    REQUIRE_THAT(text, ContainsSubstring("corner,10,20,30\n"));
    REQUIRE_THAT(text, ContainsSubstring("\n2,3,4,5\n"));
    REQUIRE_THROWS_AS(io::write_matrix_csv(path, "c", {1.0}, {1.0}, {1.0, 2.0}),
                      validation_error);
}

TEST_CASE("row csv headers") {
    auto bl_path = tmp_path("bl.csv");
    BunchingSpectrum bs;
    bs.l_max = 2;
    bs.omega_b = 1e15;
    bs.coeffs = {cplx(1.0, 0.0), cplx(0.5, 0.1), cplx(0.2, 0.0)};
    io::write_bl_csv(bl_path, bs);
    auto text = slurp(bl_path);
    REQUIRE(text.rfind("l,re,im,abs\n", 0) == 0);
    // header + one row per harmonic from -2 to 2
    long n_lines = long(std::count(text.begin(), text.end(), '\n'));
    REQUIRE(n_lines == 6);

    auto sp_path = tmp_path("spectrum.csv");
    io::write_spectrum_csv(sp_path, {{1e15, 2.0, "classical", 0, 1}});
    REQUIRE(slurp(sp_path).rfind("omega,value,channel,l,m\n", 0) == 0);

    auto en_path = tmp_path("ensemble.csv");
    io::write_ensemble_csv(en_path, {{1, 1e15, 0.5, 0.49, 0.01, 300, 42}});
    auto en = slurp(en_path);
    REQUIRE(en.rfind("l,omega,analytic,mc_mean,mc_stderr,n_trials,seed\n", 0) == 0);
    REQUIRE_THAT(en, ContainsSubstring(",300,42\n"));
}

TEST_CASE("manifest serializes the resolved configuration") {
    auto path = tmp_path("manifest.json");
    io::Config cfg;
    cfg.set("electron.beta0", 0.7);
    cfg.set("run.label", "check");
    io::write_manifest(path, cfg, "1.2.3", {"bl.csv", "manifest.json"});
    auto j = nlohmann::json::parse(slurp(path));
    REQUIRE(j["tool"] == "wprad");
    REQUIRE(j["version"] == "1.2.3");
    REQUIRE(j["config"]["electron.beta0"] == io::format_g17(0.7));
    REQUIRE(j["config"]["run.label"] == "check");
    REQUIRE(j["outputs"].size() == 2);
    REQUIRE(j["outputs"][0] == "bl.csv");
}

TEST_CASE("flat config dump replays through the parser") {
    auto path = tmp_path("resolved.cfg");
    io::Config cfg;
    cfg.set("electron.beta0", 0.7);
    cfg.set("packet.sigma_z0_m", 1e-7);
    cfg.set("run.label", "fig4 check");
    io::write_config_flat(path, cfg);
    auto back = io::Config::parse_file(path);
    REQUIRE(back.entries() == cfg.entries());
}
