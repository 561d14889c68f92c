#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "djc/cli.hpp"
#include "djc/csv.hpp"
#include "djc/figures.hpp"
#include "expect_error.hpp"

using namespace djc;

namespace {

constexpr double pi = 3.14159265358979323846;

using Settings = std::map<std::string, std::string>;

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run_with(Command command, Settings settings, std::vector<std::string> positionals = {}) {
    if (!settings.count("out")) settings["out"] = "-";
    std::ostringstream out, err;
    const int status = run(make_config(command, settings, positionals), out, err);
    return {status, out.str(), err.str()};
}

struct Parsed {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (header[k] == name) return k;
        }
        FAIL("missing column " << name);
        return 0;
    }
    double at(std::size_t row, const std::string& name) const {
        return std::stod(rows.at(row).at(column(name)));
    }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

Parsed parse_csv(const std::string& text) {
    Parsed p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            p.comments.push_back(line.substr(2));
        } else if (p.header.empty()) {
            p.header = split(line);
        } else {
            p.rows.push_back(split(line));
        }
    }
    return p;
}

}  // namespace

TEST_CASE("real literals") {
    CHECK(parse_real("1.5") == 1.5);
    CHECK(parse_real(" -2e-3 ") == -2e-3);
    CHECK(parse_real("+4") == 4.0);
    CHECK(parse_real("pi") == pi);
    CHECK(parse_real("pi/12") == doctest::Approx(pi / 12).epsilon(1e-15));
    CHECK(parse_real("3pi/4") == doctest::Approx(3 * pi / 4).epsilon(1e-15));
    CHECK(parse_real("-pi/2") == doctest::Approx(-pi / 2).epsilon(1e-15));
    CHECK(parse_real("2*pi") == doctest::Approx(2 * pi).epsilon(1e-15));
    for (const char* bad : {"", "abc", "1.5x", "pi/0", "pi*2", "nan", "inf"}) {
        CHECK(code_of([&] { parse_real(bad); }) == ErrorCode::UsageError);
    }
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(std::stod(format_number(pi)) == pi);
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("csv tables") {
    CsvTable t;
    t.comment("first\nsecond");
    t.set_header({"t", "x"});
    t.add_row({0.0, 1.25});
    t.add_text_row({"AB", "2"});
    CHECK(t.str() == "# first\n# second\nt,x\n0,1.25\nAB,2\n");
    CHECK(code_of([&] { t.add_row({1.0}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { t.add_text_row({"a,b", "c"}); }) == ErrorCode::UsageError);
}

TEST_CASE("settings files and merging") {
    const Settings file = parse_settings_file("# comment\n g1 = 2 \n\ndelta=0.5  # trailing\npreset=bell-phi\n");
    CHECK(file.at("g1") == "2");
    CHECK(file.at("delta") == "0.5");
    CHECK(file.at("preset") == "bell-phi");
    CHECK(code_of([] { parse_settings_file("g1 2\n"); }) == ErrorCode::UsageError);

    const Settings merged = merge_settings(file, {{"g1", "3"}, {"omega1", "1"}});
    CHECK(merged.at("g1") == "3");
    CHECK(merged.at("omega1") == "1");
    CHECK_FALSE(merged.count("delta"));
    CHECK(merged.at("delta2") == "0.5");
    const RunConfig c = make_config(Command::Concurrence, merged);
    CHECK(*c.omega1 == 1.0);
    CHECK(*c.delta2 == 0.5);

    const Settings both = merge_settings({{"delta1", "1"}, {"omega2", "4"}}, {{"delta", "2"}});
    CHECK(both.size() == 1);
    CHECK(both.at("delta") == "2");
}

TEST_CASE("config conflicts and usage errors") {
    CHECK(code_of([] { make_config(Command::Concurrence, {{"omega1", "1"}, {"delta1", "0.5"}}); }) ==
          ErrorCode::ConfigConflict);
    CHECK(code_of([] { make_config(Command::Concurrence, {{"omega2", "1"}, {"delta", "0.5"}}); }) ==
          ErrorCode::ConfigConflict);
    CHECK(code_of([] { make_config(Command::Concurrence, {{"delta", "1"}, {"delta2", "0.5"}}); }) ==
          ErrorCode::ConfigConflict);
    CHECK(code_of([] { make_config(Command::Concurrence, {{"gamma", "1"}}); }) == ErrorCode::UsageError);
    CHECK(code_of([] { make_config(Command::Concurrence, {{"preset", "ghz"}}); }) == ErrorCode::UsageError);
    CHECK(code_of([] { make_config(Command::Concurrence, {{"steps", "1"}}); }) == ErrorCode::UsageError);
    CHECK(code_of([] { make_config(Command::Concurrence, {}, {"fig3"}); }) == ErrorCode::UsageError);
    CHECK(code_of([] { make_config(Command::Reproduce, {}); }) == ErrorCode::UsageError);
    CHECK(make_config(Command::Reproduce, {}, {"fig3"}).target == "fig3");
}

TEST_CASE("parameter resolution") {
    const SystemParams a = resolve_params(make_config(Command::Evolve, {{"delta", "0.5"}, {"omega0", "3"}}));
    CHECK(a.omega1() == 2.0);
    CHECK(a.omega2() == 2.0);
    CHECK(a.delta1() == 0.5);
    const SystemParams b = resolve_params(make_config(Command::Evolve, {{"omega1", "1"}, {"delta2", "-1"}}));
    CHECK(b.omega0() == 0.0);
    CHECK(b.delta1() == -0.5);
    CHECK(b.omega2() == 2.0);
}

TEST_CASE("evolve: up-up start empties into the cavities at pi/2") {
    const Outcome o = run_with(Command::Evolve, {{"preset", "bell-phi"}, {"alpha", "0"}, {"delta", "0"},
                                                 {"g1", "1"}, {"g2", "1"}, {"t_max", "pi"}, {"steps", "3"}});
    REQUIRE(o.status == 0);
    const Parsed p = parse_csv(o.out);
    REQUIRE(p.rows.size() == 3);
    CHECK(p.header.front() == "t");
    CHECK(p.at(1, "t") == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(p.at(1, "abs_d4") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.at(0, "abs_d1") == 1.0);
}

TEST_CASE("concurrence output is byte-identical across runs") {
    const Settings s{{"preset", "bell-psi"}, {"g1", "4/3"}, {"g2", "2/3"}, {"steps", "300"}};
    CHECK(code_of([&] { make_config(Command::Concurrence, s); }) == ErrorCode::UsageError);
    const Settings ok{{"preset", "bell-psi"}, {"g1", "1.3"}, {"g2", "0.7"}, {"delta1", "0.2"}, {"steps", "300"}};
    const Outcome a = run_with(Command::Concurrence, ok);
    const Outcome b = run_with(Command::Concurrence, ok);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find('\r') == std::string::npos);
    const Parsed p = parse_csv(a.out);
    CHECK(p.header == std::vector<std::string>{"t", "C_AB", "C_ab", "C_Aa", "C_Bb", "C_Ab", "C_aB", "SSPC",
                                               "C_AB+C_ab", "C_12"});
    CHECK(p.rows.size() == 300);
    for (std::size_t k = 0; k < p.rows.size(); ++k) {
        CHECK(std::abs(p.at(k, "SSPC") - 1.0) < 1e-10);
    }
}

TEST_CASE("analytic engine outside its regimes is rejected") {
    const Outcome o = run_with(Command::Concurrence, {{"preset", "bell-phi"}, {"delta1", "1"}, {"delta2", "0.5"},
                                                      {"engine", "analytic"}});
    CHECK(o.status == 1);
    CHECK(o.out.empty());
    CHECK(o.err.find("RegimeMismatch") != std::string::npos);
    CHECK(o.err.find("engine=oracle") != std::string::npos);

    const Outcome fallback = run_with(Command::Concurrence, {{"preset", "bell-phi"}, {"delta1", "1"},
                                                             {"delta2", "0.5"}, {"steps", "50"}});
    CHECK(fallback.status == 0);
    CHECK(fallback.out.find("engine=oracle") != std::string::npos);
}

TEST_CASE("esd command, csv and json") {
    const Settings s{{"preset", "bell-phi"}, {"alpha", "pi/12"}, {"pair", "AB"}};
    const Outcome csv = run_with(Command::Esd, s);
    REQUIRE(csv.status == 0);
    const Parsed p = parse_csv(csv.out);
    CHECK(p.header == std::vector<std::string>{"pair", "t_start", "t_end", "length"});
    REQUIRE(p.rows.size() == 4);
    const double root = std::asin(std::sqrt(std::tan(pi / 12)));
    CHECK(p.at(0, "t_start") == doctest::Approx(root).epsilon(1e-2));

    Settings js = s;
    js["format"] = "json";
    const Outcome json = run_with(Command::Esd, js);
    REQUIRE(json.status == 0);
    const auto j = nlohmann::json::parse(json.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["pair"] == "AB");
    CHECK(j[0]["intervals"].size() == 4);
    CHECK(j[0]["intervals"][0][0].get<double>() == p.at(0, "t_start"));

    Settings bad = s;
    bad["format"] = "json";
    CHECK(run_with(Command::Concurrence, bad).status == 1);
}

TEST_CASE("transfer command") {
    const Outcome o = run_with(Command::Transfer, {{"preset", "bell-psi"}, {"pair", "ab"}});
    REQUIRE(o.status == 0);
    const Parsed p = parse_csv(o.out);
    REQUIRE(p.rows.size() == 4);
    CHECK(p.at(0, "t") == doctest::Approx(pi / 2).epsilon(1e-6));
    CHECK(p.rows[0][0] == "ab");

    const Outcome coarse = run_with(Command::Transfer, {{"preset", "bell-psi"}, {"steps", "20"}});
    CHECK(coarse.status == 1);
    CHECK(coarse.err.find("GridTooCoarse") != std::string::npos);
}

TEST_CASE("sweep command") {
    const Outcome o = run_with(Command::Sweep, {{"preset", "bell-psi"}, {"from", "0"}, {"to", "2"}, {"count", "5"}});
    REQUIRE(o.status == 0);
    const Parsed p = parse_csv(o.out);
    REQUIRE(p.rows.size() == 5);
    CHECK(p.header.front() == "delta");
    CHECK(p.at(4, "delta") == 2.0);
    CHECK(p.at(4, "min_C_AB") == doctest::Approx(0.8).epsilon(1e-4));
    CHECK(p.header.back() == "C_12");
}

TEST_CASE("reproduce targets") {
    const Outcome fig3 = run_with(Command::Reproduce, {}, {"fig3"});
    REQUIRE(fig3.status == 0);
    const Parsed p = parse_csv(fig3.out);
    CHECK(p.header == std::vector<std::string>{"t", "C_AB", "C_ab", "C_cross"});
    REQUIRE_FALSE(p.comments.empty());
    CHECK(p.comments.front().find("fig3") != std::string::npos);
    const auto& t = p.rows;
    std::size_t best = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (std::abs(p.at(k, "t") - pi / 2) < std::abs(p.at(best, "t") - pi / 2)) best = k;
    }
    CHECK(p.at(best, "C_ab") == doctest::Approx(1.0).epsilon(1e-4));

    for (const FigureTarget& f : figure_targets()) {
        const CsvTable table = reproduce_figure(f.name);
        const std::string text = table.str();
        CHECK(text.rfind("# ", 0) == 0);
        CHECK(text.find(f.name) != std::string::npos);
    }
    CHECK(code_of([] { reproduce_figure("fig99"); }) == ErrorCode::UsageError);
    CHECK(run_with(Command::Reproduce, {}, {"fig99"}).status == 1);
}

TEST_CASE("output destinations") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "djc_cli_test_output";
    fs::remove_all(dir);
    const Settings s{{"preset", "bell-psi"}, {"steps", "10"}};

    Settings to_file = s;
    to_file["out"] = (dir / "nested" / "c.csv").string();
    std::ostringstream out, err;
    REQUIRE(run(make_config(Command::Concurrence, to_file), out, err) == 0);
    CHECK(out.str().empty());
    std::ifstream written(dir / "nested" / "c.csv");
    std::stringstream buffer;
    buffer << written.rdbuf();
    CHECK(buffer.str() == run_with(Command::Concurrence, s).out);

    ::setenv("DJC_OUTPUT_DIR", dir.string().c_str(), 1);
    std::ostringstream out2, err2;
    CHECK(run(make_config(Command::Concurrence, s), out2, err2) == 0);
    ::unsetenv("DJC_OUTPUT_DIR");
    CHECK(out2.str().empty());
    CHECK(fs::exists(dir / "concurrence.csv"));
    fs::remove_all(dir);
}
