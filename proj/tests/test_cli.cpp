#include "antichain/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace antichain;

namespace {

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "antichain");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    Invocation r;
    r.code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

nlohmann::json parsed(const Invocation& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST_CASE("eval reports F and echoes the configuration") {
    const Invocation r = invoke({"eval", "--n", "3", "--point", "0.5,0.5", "--no-timing"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = parsed(r);
    CHECK(j["status"] == "ok");
    CHECK(j["result"]["F"].get<double>() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(j["result"]["clamped"] == false);
    CHECK(j["config"]["n"] == 3);
    CHECK(j["config"]["kind"] == "salem");
    CHECK(j["config"]["lambda"] == 0.25);
    CHECK(j["config"]["depth"] == 52);
    CHECK(j["config"]["seed"] == 0);
    CHECK(j["config"]["budget"] == 100'000'000);
    CHECK_FALSE(j.contains("wall_clock_seconds"));

    const auto timed = parsed(invoke({"eval", "--n", "2", "--point", "0.3"}));
    CHECK(timed.contains("wall_clock_seconds"));
}

TEST_CASE("identity fixture through the command line") {
    const auto j = parsed(invoke({"eval", "--n", "2", "--lambda", "0.5", "--point", "0.3", "--no-timing"}));
    CHECK(j["config"]["non_singular_fixture"] == true);
    CHECK(j["result"]["F"].get<double>() == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("boundary points are clamped with a warning") {
    const Invocation r = invoke({"eval", "--n", "2", "--point", "1", "--no-timing"});
    CHECK(r.code == cli::kExitOk);
    const auto j = parsed(r);
    CHECK(j["result"]["clamped"] == true);
    CHECK(j["result"]["point"][0].get<double>() == 1.0 - 1e-9);
    CHECK(r.err.find("clamped") != std::string::npos);

    CHECK(invoke({"eval", "--n", "2", "--point", "1.5"}).code == cli::kExitConfig);
    CHECK(invoke({"eval", "--n", "3", "--point", "0.5"}).code == cli::kExitConfig);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"check-antichain", "--n", "3", "--pairs", "2000"}).code == cli::kExitOk);
    CHECK(invoke({"eval", "--kind", "cantor", "--point", "0.2,0.3"}).code == cli::kExitConfig);
    CHECK(invoke({"eval", "--kind", "weierstrass", "--point", "0.2,0.3"}).code == cli::kExitConfig);
    CHECK(invoke({"length", "--n", "3"}).code == cli::kExitConfig);
    CHECK(invoke({"frobnicate"}).code == cli::kExitConfig);
    CHECK(invoke({}).code == cli::kExitConfig);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
    CHECK(invoke({"dimension", "--n", "2", "--k-min", "4", "--k-max", "5"}).code == cli::kExitConfig);

    const Invocation cantor = invoke({"eval", "--kind", "cantor", "--point", "0.2,0.3", "--no-timing"});
    const auto j = parsed(cantor);
    CHECK(j["status"] == "error");
    CHECK(j["error"]["type"] == "config");
}

TEST_CASE("identical configuration and seed give identical reports") {
    const std::vector<std::vector<std::string>> runs = {
        {"check-antichain", "--n", "4", "--pairs", "5000", "--seed", "9", "--no-timing"},
        {"dimension", "--n", "2", "--k-min", "3", "--k-max", "7", "--no-timing"},
        {"projections", "--n", "2", "--domain-depth", "8", "--image-depth", "5", "--samples", "2", "--no-timing"},
        {"length", "--n", "2", "--k", "12", "--format", "csv", "--no-timing"},
    };
    for (const auto& args : runs) {
        const Invocation a = invoke(args);
        const Invocation b = invoke(args);
        CHECK(a.code == cli::kExitOk);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("per-command defaults are echoed") {
    const auto j = parsed(invoke({"projections", "--n", "2", "--domain-depth", "6", "--image-depth", "4",
                                  "--no-timing"}));
    CHECK(j["config"]["samples"] == 16);
    CHECK(j["config"]["probe_depth"] == 40);
    CHECK(j["config"]["eps"] == 0.01);
    CHECK(j["result"]["axes"].size() == 2);

    const auto d = parsed(invoke({"dimension", "--n", "2", "--no-timing"}));
    CHECK(d["config"]["k_min"] == 6);
    CHECK(d["config"]["k_max"] == 14);
    CHECK(d["result"]["depths"].size() == 9);
}

TEST_CASE("length report") {
    const auto j = parsed(invoke({"length", "--n", "2", "--k", "22", "--no-timing"}));
    CHECK(j["result"]["length"].get<double>() == 1.8274409202959285);
    CHECK(j["result"]["upper_bound"] == 2.0);
}

TEST_CASE("csv reports use 17 significant digits") {
    const Invocation r = invoke({"eval", "--n", "2", "--lambda", "0.5", "--point", "0.3", "--format", "csv",
                                 "--no-timing"});
    CHECK(r.out.rfind("key,value\n", 0) == 0);
    CHECK(r.out.find("result.F,0.70000000000000018\n") != std::string::npos);
    CHECK(r.out.find("config.n,2\n") != std::string::npos);
}

TEST_CASE("mesh export") {
    const Invocation csv = invoke({"export-mesh", "--n", "2", "--lambda", "0.5", "--resolution", "3",
                                   "--format", "csv"});
    REQUIRE(csv.code == cli::kExitOk);
    CHECK(csv.out == "x1,F\n0.25,0.75\n0.5,0.5\n0.75,0.25\n");

    const Invocation grid3 = invoke({"export-mesh", "--n", "3", "--resolution", "2", "--format", "csv"});
    std::istringstream lines(grid3.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "x1,x2,F");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
    }
    CHECK(rows == 4);

    const Invocation js = invoke({"export-mesh", "--n", "2", "--lambda", "0.5", "--resolution", "3"});
    const auto j = parsed(js);
    CHECK(j["n"] == 2);
    CHECK(j["grid"].size() == 3);
    CHECK(j["values"][1].get<double>() == 0.5);

    CHECK(invoke({"export-mesh", "--n", "4"}).code == cli::kExitConfig);
}

TEST_CASE("output files") {
    const auto path = std::filesystem::temp_directory_path() / "antichain_cli_test_report.json";
    std::filesystem::remove(path);
    const Invocation r = invoke({"eval", "--n", "2", "--point", "0.3", "--output", path.string(), "--no-timing"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    std::ifstream file(path);
    const auto j = nlohmann::json::parse(file);
    CHECK(j["config"]["output"] == path.string());
    std::filesystem::remove(path);

    CHECK(invoke({"eval", "--n", "2", "--point", "0.3", "--output", "/nonexistent-dir/report.json"}).code ==
          cli::kExitConfig);
}

TEST_CASE("evaluation budget override") {
    ::setenv("ANTICHAIN_EVAL_BUDGET", "1000", 1);
    const Invocation r = invoke({"length", "--n", "2", "--k", "12", "--no-timing"});
    CHECK(r.code == cli::kExitConfig);
    CHECK(parsed(r)["error"]["type"] == "resource");
    ::setenv("ANTICHAIN_EVAL_BUDGET", "0x", 1);
    CHECK(invoke({"length", "--n", "2", "--k", "4"}).code == cli::kExitConfig);
    ::unsetenv("ANTICHAIN_EVAL_BUDGET");
    CHECK(invoke({"length", "--n", "2", "--k", "12"}).code == cli::kExitOk);
}
