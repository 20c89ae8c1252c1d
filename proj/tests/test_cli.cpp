#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <doctest.h>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"

using namespace argvar;
namespace fs = std::filesystem;

namespace {

const char* kMinimalScenario = R"({
  "id": "mono",
  "checks": ["growth_zeros"],
  "function": {"op": "pow", "base": {"op": "z"}, "exponent": 3},
  "regions": {
    "K": {"shape": "disk", "center": [0, 0], "radius": 1.0},
    "U": {"shape": "disk", "center": [0, 0], "radius": 2.0}
  },
  "grid": {"h": 0.15, "levels": 2}
})";

std::string z5_all_checks() {
    return R"({
  "id": "z5-all",
  "checks": ["growth_zeros", "theorem1", "lemma2", "lemma3", "koebe", "eq14"],
  "function": {"op": "pow", "base": {"op": "z"}, "exponent": 5},
  "regions": {
    "K": {"shape": "disk", "center": [0, 0], "radius": 1.5},
    "U2": {"shape": "disk", "center": [0, 0], "radius": 3.0},
    "U1": {"shape": "disk", "center": [0, 0], "radius": 6.0},
    "U": {"shape": "disk", "center": [0, 0], "radius": 9.0}
  },
  "gamma": {"segments": [{"type": "arc", "center": [0, 0], "radius": 1.5,
                          "a0": 0.0, "a1": 6.283185307179586}]},
  "p_roots": [[0, 0], [0, 0], [0, 0], [0, 0], [0, 0]],
  "basepoint": [0.5, 0],
  "grid": {"h": 0.4, "levels": 2}
})";
}

fs::path temp_dir() {
    auto d = fs::temp_directory_path() / "argvar_cli_test";
    fs::create_directories(d);
    return d;
}

std::string write_temp(const std::string& name, const std::string& text) {
    auto p = temp_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(ARGVAR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string strip_timing(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.find("elapsed") == std::string::npos) out += line + "\n";
    return out;
}

}  // namespace

TEST_CASE("minimal scenario parses and round-trips") {
    cli::Scenario s = cli::parse_scenario_text(kMinimalScenario, "inline");
    CHECK(s.id == "mono");
    CHECK(s.checks == std::vector<std::string>{"growth_zeros"});
    CHECK(s.regions.count("K") == 1);
    CHECK(s.regions.count("U") == 1);
    CHECK(s.grid.h == doctest::Approx(0.15));
    CHECK(!s.cov);

    std::string ser1 = cli::serialize_scenario(s);
    cli::Scenario s2 = cli::parse_scenario_text(ser1, "round-trip");
    CHECK(cli::serialize_scenario(s2) == ser1);
    CHECK(eval(s2.f, Cx(2.0, 0.0)) == Cx(8.0, 0.0));
}

TEST_CASE("parse errors carry field context") {
    CHECK_THROWS_AS(cli::parse_scenario_text("{ not json", "x"), ParseError);
    CHECK_THROWS_AS(cli::parse_scenario_text("[1,2]", "x"), ParseError);
    // missing function
    CHECK_THROWS_WITH_AS(
        cli::parse_scenario_text(R"({"id":"a","checks":["eq14"]})", "x"),
        doctest::Contains("function"), ParseError);
    // unknown op
    CHECK_THROWS_AS(cli::parse_scenario_text(
                        R"({"id":"a","checks":["growth_zeros"],
                            "function":{"op":"sin","arg":{"op":"z"}}})",
                        "x"),
                    ParseError);
    CHECK_THROWS_AS(cli::parse_scenario("/nonexistent/path.json"), ParseError);
}

TEST_CASE("validation: unknown check and incompatible geometry") {
    // unknown check name
    CHECK_THROWS_AS(cli::parse_scenario_text(
                        R"({"id":"a","checks":["theorem9"],"function":{"op":"z"}})", "x"),
                    ValidationError);
    // theorem2 without a cover
    CHECK_THROWS_WITH_AS(
        cli::parse_scenario_text(
            R"({"id":"a","checks":["theorem2"],"function":{"op":"z"},
                "gamma":{"segments":[{"type":"arc","center":[0,0],"radius":1,
                                      "a0":0,"a1":6.283185307179586}]}})",
            "x"),
        doctest::Contains("cover"), ValidationError);
    // growth_zeros with K not contained in U
    CHECK_THROWS_AS(cli::parse_scenario_text(
                        R"({"id":"a","checks":["growth_zeros"],"function":{"op":"z"},
                            "regions":{
                              "K":{"shape":"disk","center":[0,0],"radius":3.0},
                              "U":{"shape":"disk","center":[0,0],"radius":2.0}}})",
                        "x"),
                    ValidationError);
    // missing region for a requested check
    CHECK_THROWS_AS(cli::parse_scenario_text(
                        R"({"id":"a","checks":["growth_zeros"],"function":{"op":"z"}})",
                        "x"),
                    ValidationError);
}

TEST_CASE("run_scenario: monomial growth_zeros holds") {
    cli::Scenario s = cli::parse_scenario_text(kMinimalScenario, "inline");
    cli::Report r = cli::run_scenario(s);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].status == "ok");
    REQUIRE(r.records[0].result);
    CHECK(r.records[0].result->lhs == doctest::Approx(3.0));
    CHECK(r.records[0].result->holds);
    CHECK(r.measured.count("epsilon") == 1);
    CHECK(cli::exit_code_for({r}) == 0);
}

TEST_CASE("run_scenario: all-checks z^5 scenario yields 6 records") {
    cli::Scenario s = cli::parse_scenario_text(z5_all_checks(), "inline");
    cli::Report r = cli::run_scenario(s);
    REQUIRE(r.records.size() == 6);
    for (const auto& rec : r.records) {
        CAPTURE(rec.check);
        CHECK(rec.status == "ok");
        REQUIRE(rec.result);
        CHECK(rec.result->holds);
    }
    CHECK(r.records[1].result->inputs.at("intermediate_form_holds") == 1.0);
    CHECK(cli::exit_code_for({r}) == 0);
}

TEST_CASE("run_scenario: violated theorem1 hypothesis becomes a record") {
    // gamma leaves U2, so the measured gap fails at run time (not at parse,
    // which only checks region nesting)
    std::string text = R"({
      "id": "hyp",
      "checks": ["theorem1"],
      "function": {"op": "pow", "base": {"op": "z"}, "exponent": 2},
      "regions": {
        "U2": {"shape": "disk", "center": [0, 0], "radius": 2.0},
        "U1": {"shape": "disk", "center": [0, 0], "radius": 4.0},
        "U": {"shape": "disk", "center": [0, 0], "radius": 6.0}
      },
      "gamma": {"segments": [{"type": "arc", "center": [0, 0], "radius": 2.5,
                              "a0": 0.0, "a1": 6.283185307179586}]},
      "grid": {"h": 0.3, "levels": 2}
    })";
    cli::Scenario s = cli::parse_scenario_text(text, "inline");
    cli::Report r = cli::run_scenario(s);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].status == "hypothesis_error");
    CHECK(!r.records[0].result);
    CHECK(cli::exit_code_for({r}) == 2);
}

TEST_CASE("exit code aggregation") {
    cli::Report ok, bad, hyp;
    cli::CheckRecord rec;
    rec.check = "eq14";
    rec.status = "ok";
    bounds::BoundCheck c;
    c.holds = true;
    rec.result = c;
    ok.records = {rec};
    c.holds = false;
    rec.result = c;
    bad.records = {rec};
    rec.result.reset();
    rec.status = "hypothesis_error";
    hyp.records = {rec};
    CHECK(cli::exit_code_for({ok}) == 0);
    CHECK(cli::exit_code_for({ok, bad}) == 1);
    CHECK(cli::exit_code_for({ok, hyp}) == 2);
    CHECK(cli::exit_code_for({bad, hyp}) == 2);
}

TEST_CASE("generate_suite is deterministic and generated scenarios validate") {
    auto a = cli::generate_suite(1, 2, "growth_zeros");
    auto b = cli::generate_suite(1, 2, "growth_zeros");
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(cli::serialize_scenario(a[i]) == cli::serialize_scenario(b[i]));
    auto c = cli::generate_suite(2, 2, "growth_zeros");
    CHECK(cli::serialize_scenario(a[0]) != cli::serialize_scenario(c[0]));

    CHECK_THROWS_AS(cli::generate_suite(1, 1, "nope"), ValidationError);

    // every generated theorem1 scenario passes parse-time validation and runs
    // with its hypotheses satisfied
    for (const auto& s : cli::generate_suite(11, 5, "theorem1")) {
        cli::Scenario rt = cli::parse_scenario_text(cli::serialize_scenario(s), s.id);
        cli::Report r = cli::run_scenario(rt);
        REQUIRE(r.records.size() == 1);
        CHECK(r.records[0].status == "ok");
        CHECK(r.records[0].result->holds);
    }
}

TEST_CASE("csv emission: header, rows, and lossless flat fields") {
    cli::Report empty;
    empty.scenario_id = "empty";
    CHECK(cli::report_csv(empty) == "name,lhs,rhs,slack,holds,epsilon,D,gamma_length,kappa\n");

    cli::Report one;
    one.scenario_id = "one";
    cli::CheckRecord rec;
    rec.check = "growth_zeros";
    rec.status = "ok";
    bounds::BoundCheck c;
    c.name = "GrowthAndZeros";
    c.lhs = 3.0;
    c.rhs = 112.92828356823468;
    c.slack = c.rhs - c.lhs;
    c.holds = true;
    c.inputs = {{"epsilon", 0.9999999999999998},
                {"D", 2.0000000000000004},
                {"gamma_length", 6.283185307179586},
                {"kappa", 6.283185307179586}};
    rec.result = c;
    one.records = {rec};
    std::string csv = cli::report_csv(one);
    std::istringstream in(csv);
    std::string header, row, extra;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    CHECK(!std::getline(in, extra));

    // parse the row back and compare bit-exactly
    std::vector<std::string> fields;
    std::istringstream rs(row);
    std::string field;
    while (std::getline(rs, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 9);
    CHECK(fields[0] == "GrowthAndZeros");
    CHECK(std::stod(fields[1]) == c.lhs);
    CHECK(std::stod(fields[2]) == c.rhs);
    CHECK(std::stod(fields[3]) == c.slack);
    CHECK(fields[4] == "true");
    CHECK(std::stod(fields[5]) == c.inputs["epsilon"]);
    CHECK(std::stod(fields[6]) == c.inputs["D"]);
    CHECK(std::stod(fields[7]) == c.inputs["gamma_length"]);
    CHECK(std::stod(fields[8]) == c.inputs["kappa"]);
}

TEST_CASE("emit_report writes report and plot files") {
    cli::Scenario s = cli::parse_scenario_text(kMinimalScenario, "inline");
    cli::Report r = cli::run_scenario(s);
    auto dir = temp_dir() / "emit";
    fs::remove_all(dir);
    cli::emit_report(r, "json", dir.string());
    CHECK(fs::exists(dir / "mono.json"));
    CHECK(fs::exists(dir / "mono_plot.csv"));
    CHECK(fs::exists(dir / "mono_plot.svg"));
    cli::emit_report(r, "csv", dir.string());
    CHECK(fs::exists(dir / "mono.csv"));
    CHECK_THROWS_AS(cli::emit_report(r, "xml", dir.string()), ValidationError);

    std::string js = cli::report_json(r);
    CHECK(js.find("\"scenario\": \"mono\"") != std::string::npos);
    CHECK(js.find("\"tool_version\"") != std::string::npos);
    CHECK(js.find("\"holds\": true") != std::string::npos);
}

TEST_CASE("cli binary: run verb exit codes and determinism") {
    std::string scen = write_temp("mono.json", kMinimalScenario);
    auto out1 = temp_dir() / "out1";
    auto out2 = temp_dir() / "out2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    CHECK(run_cli("run --scenario " + scen + " --out " + out1.string()) == 0);
    CHECK(run_cli("run --scenario " + scen + " --out " + out2.string()) == 0);
    std::string r1 = read_file(out1 / "mono.json");
    std::string r2 = read_file(out2 / "mono.json");
    CHECK(strip_timing(r1) == strip_timing(r2));
    CHECK(!strip_timing(r1).empty());

    // malformed scenario -> 2
    std::string bad = write_temp("bad.json", "{ nope");
    CHECK(run_cli("run --scenario " + bad + " --out " + out1.string()) == 2);
    // K not contained in U -> 2 (validation)
    std::string kau = write_temp("kau.json",
                                 R"({"id":"a","checks":["growth_zeros"],
                                     "function":{"op":"z"},
                                     "regions":{
                                       "K":{"shape":"disk","center":[0,0],"radius":3.0},
                                       "U":{"shape":"disk","center":[0,0],"radius":2.0}}})");
    CHECK(run_cli("run --scenario " + kau + " --out " + out1.string()) == 2);
    // bad usage -> CLI11 error (not 0)
    CHECK(run_cli("run --scenario") != 0);
}

TEST_CASE("cli binary: suite verb") {
    auto out = temp_dir() / "suite_out";
    fs::remove_all(out);
    CHECK(run_cli("suite --kind eq14 --seed 5 --n 3 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "summary.json"));
    CHECK(fs::exists(out / "plot.csv"));
    CHECK(fs::exists(out / "plot.svg"));
    CHECK(fs::exists(out / "scenarios" / "eq14-0000.json"));
    CHECK(fs::exists(out / "reports" / "eq14-0002.json"));
    CHECK(run_cli("suite --kind nope --seed 5 --n 3 --out " + out.string()) == 2);
}
