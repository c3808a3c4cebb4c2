#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "wittenlab/config.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/io.hpp"

using namespace wittenlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir =
        fs::temp_directory_path() / ("wittenlab-" + std::to_string(::getpid()) + "-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args, const fs::path& dir) {
    const std::string cmd = std::string("\"") + WITTENLAB_CLI_PATH + "\" " + args + " > \"" +
                            (dir / "stdout.txt").string() + "\" 2> \"" +
                            (dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("doubles format to shortest round-trip decimals") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-3.0) == "-3");
}

TEST_CASE("json serialization is deterministic and insertion ordered") {
    JsonValue doc = JsonValue::object();
    doc.set("b", JsonValue::integer(2));
    doc.set("a", json_number_array({1.0, 2.5}));
    JsonValue nested = JsonValue::array();
    nested.push(JsonValue::object().set("x", JsonValue::boolean(true)));
    doc.set("list", std::move(nested));
    const std::string expect =
        "{\n"
        "  \"b\": 2,\n"
        "  \"a\": [1, 2.5],\n"
        "  \"list\": [\n"
        "    {\n"
        "      \"x\": true\n"
        "    }\n"
        "  ]\n"
        "}\n";
    CHECK(doc.dump() == expect);
    CHECK(JsonValue::object().dump() == "{}\n");
    CHECK(JsonValue::string("a\"b\nc").dump() == "\"a\\\"b\\nc\"\n");
}

TEST_CASE("ini parsing flattens sections and strips comments") {
    std::istringstream in(
        "# leading comment\n"
        "model = torus\n"
        "n1 = 12\n"
        "\n"
        "[phi]\n"
        "a1 = 0.1  ; trailing comment\n"
        "a2 = 0.5\n"
        "[field]\n"
        "k = 2\n");
    const auto keys = parse_ini(in, "test.ini");
    CHECK(keys.at("model") == "torus");
    CHECK(keys.at("n1") == "12");
    CHECK(keys.at("phi.a1") == "0.1");
    CHECK(keys.at("phi.a2") == "0.5");
    CHECK(keys.at("field.k") == "2");

    std::istringstream bad("just words without equals\n");
    CHECK_THROWS_AS(parse_ini(bad, "bad.ini"), Error);
}

TEST_CASE("config resolution layers defaults, file, then flags") {
    const RunConfig def = resolve_config("spectrum", {}, {});
    CHECK(def.model == "circle");
    CHECK(def.n == 256);
    CHECK(def.t == 0.5);
    CHECK(def.k == 8);
    CHECK(def.out == "out");

    const RunConfig layered = resolve_config(
        "spectrum", {{"t", "0.3"}, {"n", "64"}}, {{"t", "0.7"}, {"field", "cos-theta"}});
    CHECK(layered.t == 0.7);  // flag wins over file
    CHECK(layered.n == 64);

    CHECK_THROWS_AS(resolve_config("spectrum", {{"bogus", "1"}}, {}), Error);
    CHECK_THROWS_AS(resolve_config("spectrum", {}, {{"n", "not-a-number"}}), Error);
    CHECK_THROWS_AS(resolve_config("spectrum", {}, {{"k", "0"}}), Error);
    CHECK_THROWS_AS(resolve_config("spectrum", {}, {{"tol", "-1"}}), Error);

    // Flow and foliation get their own schedule defaults when none is given.
    const RunConfig flow = resolve_config("flow", {}, {});
    CHECK(flow.t_grid == "geom:1.0:0.02:25");
    const RunConfig fol = resolve_config("foliation", {}, {});
    CHECK(fol.t_grid == "geom:0.08:0.01:25");
    CHECK(fol.k == 16);
}

TEST_CASE("geometric schedule endpoints are exact") {
    const std::vector<double> s = parse_schedule("geom:1.0:0.02:25");
    REQUIRE(s.size() == 25);
    CHECK(s.front() == 1.0);
    CHECK(s.back() == 0.02);
    for (size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i + 1] < s[i]);
    CHECK(parse_schedule("geom:0.5:0.1:1") == std::vector<double>{0.5});

    CHECK_THROWS_AS(parse_schedule(""), Error);
    CHECK_THROWS_AS(parse_schedule("lin:1:0.1:5"), Error);
    CHECK_THROWS_AS(parse_schedule("geom:0.1:1.0:5"), Error);
    CHECK_THROWS_AS(parse_schedule("geom:1.0:-0.1:5"), Error);
    CHECK_THROWS_AS(parse_schedule("geom:1.0:0.1"), Error);
}

TEST_CASE("slope strings parse as integer pairs") {
    CHECK(parse_slope("1/0") == std::pair<int, int>(1, 0));
    CHECK(parse_slope("2/-3") == std::pair<int, int>(2, -3));
    CHECK_THROWS_AS(parse_slope("11"), Error);
    CHECK_THROWS_AS(parse_slope("a/b"), Error);
}

TEST_CASE("spectrum command writes a csv with certified residuals") {
    const fs::path dir = scratch_dir("spectrum");
    const int code = run_cli("spectrum --model circle --n 64 --field cos-theta --t 0.5 "
                             "--degree 0 --k 5 --out \"" + (dir / "out").string() + "\"",
                             dir);
    CHECK(code == 0);
    const auto lines = lines_of(read_text_file((dir / "out" / "spectrum_p0.csv").string()));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "degree,t,index,lambda,t_lambda,residual");
    for (int i = 1; i <= 5; ++i) {
        std::istringstream row(lines[size_t(i)]);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 6);
        CHECK(cells[0] == "0");
        CHECK(std::stoi(cells[2]) == i);
        CHECK(std::stod(cells[5]) <= 1e-8);
    }
}

TEST_CASE("morse check command reports counts against kernels") {
    const fs::path dir = scratch_dir("morse");
    const int code = run_cli("morse-check --model torus --n 24 --field sum-cos --out \"" +
                                 (dir / "out").string() + "\"",
                             dir);
    CHECK(code == 0);
    const json doc = json::parse(read_text_file((dir / "out" / "morse_check.json").string()));
    CHECK(doc.at("counts") == json::array({1, 2, 1}));
    CHECK(doc.at("betti") == json::array({1, 2, 1}));
    CHECK(doc.at("slacks") == json::array({0, 0, 0}));
    CHECK(doc.at("pass") == true);
    CHECK(doc.at("euler_exact") == true);
    CHECK(doc.at("critical_points").size() == 4);
    CHECK(doc.at("config").at("command") == "morse-check");
}

TEST_CASE("flow command writes the schedule, tracks, and oracle") {
    const fs::path dir = scratch_dir("flow");
    const int code = run_cli(
        "flow --model circle --n 64 --field cos-theta --t-grid geom:1.0:0.5:3 "
        "--degree 0 --k 3 --out \"" + (dir / "out").string() + "\"",
        dir);
    CHECK(code == 0);
    const json doc = json::parse(read_text_file((dir / "out" / "flow.json").string()));
    CHECK(doc.at("schedule").size() == 3);
    CHECK(doc.at("degrees").at("0").size() == 3);
    CHECK(doc.at("degrees").at("0").at(0).size() == 3);
    CHECK(doc.at("oracle").at("0").size() == 3);
    CHECK(doc.at("skipped").empty());
    for (int i = 1; i <= 3; ++i) {
        const fs::path track = dir / "out" / ("track_p0_" + std::to_string(i) + ".csv");
        const auto lines = lines_of(read_text_file(track.string()));
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "t,t_lambda");
    }
}

TEST_CASE("oracle command halves exactly in published mode") {
    const fs::path dir = scratch_dir("oracle");
    int code = run_cli("oracle --model circle --n 32 --field cos-theta --degree 0 "
                       "--cutoff 5 --oracle-mode paper --out \"" + (dir / "paper").string() + "\"",
                       dir);
    CHECK(code == 0);
    code = run_cli("oracle --model circle --n 32 --field cos-theta --degree 0 "
                   "--cutoff 10 --oracle-mode standard --out \"" + (dir / "std").string() + "\"",
                   dir);
    CHECK(code == 0);
    const json paper = json::parse(read_text_file((dir / "paper" / "oracle.json").string()));
    const json standard = json::parse(read_text_file((dir / "std" / "oracle.json").string()));
    CHECK(paper.at("mode") == "paper");
    const auto& pe = paper.at("entries");
    const auto& se = standard.at("entries");
    REQUIRE(pe.size() == se.size());
    for (size_t i = 0; i < pe.size(); ++i) {
        CHECK(pe.at(i).at(0).get<double>() == se.at(i).at(0).get<double>() / 2.0);
        CHECK(pe.at(i).at(1) == se.at(i).at(1));
    }
    // The circle field's aggregated limit values, standard mode.
    CHECK(se.at(0) == json::array({0.0, 1}));
    CHECK(se.at(1) == json::array({2.0, 2}));
    CHECK(se.at(2) == json::array({4.0, 2}));
}

TEST_CASE("config files merge with flag overrides") {
    const fs::path dir = scratch_dir("config");
    const fs::path ini = dir / "run.ini";
    write_text_file(ini.string(),
                    "model = circle\nn = 48\nt = 0.4\n[field]\n# catalog id goes on the flag\n");
    const int code = run_cli("spectrum --config \"" + ini.string() + "\" --t 0.6 --k 4 --out \"" +
                                 (dir / "out").string() + "\"",
                             dir);
    CHECK(code == 0);
    const auto lines = lines_of(read_text_file((dir / "out" / "spectrum_p0.csv").string()));
    REQUIRE(lines.size() == 5);
    CHECK(lines[1].rfind("0,0.59999999999999998,", 0) == 0);  // flag t wins
}

TEST_CASE("config and numerical failures map to distinct exit codes") {
    const fs::path dir = scratch_dir("errors");
    CHECK(run_cli("spectrum --model circle --n 32 --field cos-k-theta --out \"" +
                      (dir / "a").string() + "\"",
                  dir) == 2);  // missing field.k
    CHECK(run_cli("spectrum --model circle --n 8 --k 20 --field cos-theta --out \"" +
                      (dir / "b").string() + "\"",
                  dir) == 2);  // k exceeds matrix size
    CHECK(run_cli("spectrum --model torus --n 16 --field cos-theta --out \"" +
                      (dir / "c").string() + "\"",
                  dir) == 2);  // domain mismatch
    CHECK(run_cli("spectrum --model circle --n 512 --field cos-theta --t 1e-5 --out \"" +
                      (dir / "d").string() + "\"",
                  dir) == 3);  // overflow guard trips: numerical failure
    const std::string err = read_text_file((dir / "stderr.txt").string());
    CHECK(err.find("overflow-guard") != std::string::npos);
}

TEST_CASE("reruns with the same seed are byte identical") {
    const fs::path dir = scratch_dir("determinism");
    const std::string args = "spectrum --model torus --n 12 --field sum-cos --t 0.4 "
                             "--degree 1 --k 4 --seed 12345 --out \"" +
                             (dir / "out").string() + "\"";
    CHECK(run_cli(args, dir) == 0);
    const std::string first = read_text_file((dir / "out" / "spectrum_p1.csv").string());
    CHECK(run_cli(args, dir) == 0);
    const std::string second = read_text_file((dir / "out" / "spectrum_p1.csv").string());
    CHECK(first == second);
    CHECK(!first.empty());
}

TEST_CASE("version flag reports and exits cleanly") {
    const fs::path dir = scratch_dir("version");
    CHECK(run_cli("--version", dir) == 0);
    const std::string out = read_text_file((dir / "stdout.txt").string());
    CHECK(out.find("0.1.0") != std::string::npos);
}
