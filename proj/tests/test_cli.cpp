#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "riskched/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "riskched");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = riskched::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string kFixture = std::string(RISKCHED_TEST_DATA) + "/worked_example.json";

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("riskched_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("evaluate the worked example") {
    auto r = run({"evaluate", "--instance", kFixture, "--schedule", "0,1,2,3", "--criterion", "cvar", "--alpha", "1/2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("value: 34\n") != std::string::npos);
    CHECK(r.err.empty());

    r = run({"evaluate", "--instance", kFixture, "--schedule", "0,1,2,3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["expectation"] == "26");
    CHECK(j["var"] == "29");
    CHECK(j["cvar"] == "34");
    CHECK(j["max"] == "36");
}

TEST_CASE("solve a single job") {
    const auto path = temp_file("one.json", R"({"jobs": 1, "objective": "sumC",
        "scenarios": [{"prob": 1, "p": [2], "d": [0]}]})");
    const auto r = run({"solve", "--instance", path, "--algorithm", "brute", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schedule"] == nlohmann::json::array({0}));
    CHECK(j["value"] == "2");
    CHECK(j["certificate"]["kind"] == "exact");
}

TEST_CASE("solved schedules re-evaluate to the reported value") {
    for (const char* alg : {"brute", "lp2", "lift"}) {
        auto r = run({"solve", "--instance", kFixture, "--algorithm", alg, "--criterion", "cvar", "--alpha", "1/2",
                      "--format", "json"});
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        std::string order;
        for (const auto& x : j["schedule"]) order += (order.empty() ? "" : ",") + std::to_string(x.get<int>());
        auto e = run({"evaluate", "--instance", kFixture, "--schedule", order, "--criterion", "cvar", "--alpha", "1/2",
                      "--format", "json"});
        REQUIRE(e.code == 0);
        CHECK(nlohmann::json::parse(e.out)["value"] == j["value"]);
    }
}

TEST_CASE("oracle on a random corpus") {
    const auto r = run({"oracle", "--algorithm", "lp2", "--n", "6", "--count", "10", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["violations"] == 0);
    CHECK(j["max_ratio"].get<double>() <= 2.0);
    CHECK(j["results"].size() == 10);
    const auto again = run({"oracle", "--algorithm", "lp2", "--n", "6", "--count", "10", "--format", "json"});
    CHECK(again.out == r.out);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"evaluate", "--instance", kFixture, "--schedule", "0,1,2,3", "--criterion", "exp", "--alpha", "1/2"})
              .code == 2);
    CHECK(run({"evaluate", "--instance", kFixture, "--schedule", "0,1,2,3", "--criterion", "var"}).code == 2);
    CHECK(run({"evaluate", "--instance", kFixture, "--schedule", "0,1,2,3", "--criterion", "cvar", "--alpha", "1"})
              .code == 2);
    CHECK(run({"evaluate", "--instance", kFixture, "--schedule", "0,1,2"}).code == 2);
    CHECK(run({"solve", "--instance", kFixture, "--algorithm", "magic"}).code == 2);
    CHECK(run({"solve", "--instance", kFixture, "--algorithm", "wspt", "--criterion", "max"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("invalid instances exit with 3") {
    const auto path = temp_file("bad.json", "{\n\"jobs\": 1,\n\"objective\": \"sumC\",\n\"scenarios\": [\n"
                                            "{\"prob\": \"1/2\", \"p\": [1], \"d\": [0]}]}");
    auto r = run({"validate", "--instance", path});
    CHECK(r.code == 3);
    CHECK(r.out.find("line 4: ProbabilityNotOne") != std::string::npos);

    r = run({"solve", "--instance", path, "--algorithm", "brute", "--format", "json"});
    CHECK(r.code == 3);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["error"]["code"] == "InvalidInstance");
    CHECK(j["error"]["issues"][0]["line"] == 4);
    CHECK_FALSE(r.err.empty());

    CHECK(run({"solve", "--instance", "/nonexistent.json", "--algorithm", "brute"}).code == 3);
}

TEST_CASE("solver failures exit with 4") {
    auto r = run({"solve", "--instance", kFixture, "--algorithm", "lawler", "--format", "json"});
    CHECK(r.code == 4);
    CHECK(nlohmann::json::parse(r.out)["error"]["code"] == "WrongObjective");
    CHECK(run({"solve", "--instance", kFixture, "--algorithm", "brute", "--cap", "3"}).code == 4);
}

TEST_CASE("reduce writes a valid instance") {
    const auto cnf = temp_file("f.cnf", "p cnf 3 2\n1 -2 0\n2 3 0\n");
    const auto out = (std::filesystem::temp_directory_path() / "riskched_cli_gadget.json").string();
    auto r = run({"reduce", "--gadget", "3sat-sumt", "--cnf", cnf, "--output", out, "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["threshold"] == "2");
    CHECK(run({"validate", "--instance", out}).code == 0);

    r = run({"reduce", "--gadget", "min3sat-var", "--cnf", cnf, "--L", "1", "--alpha", "1/2"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["jobs"] == 6);

    r = run({"reduce", "--gadget", "add-zero", "--instance", kFixture, "--alpha", "1/2"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["scenarios"].size() == 6);

    CHECK(run({"reduce", "--gadget", "min3sat-var", "--cnf", cnf, "--L", "5", "--alpha", "1/2"}).code == 4);
    CHECK(run({"reduce", "--gadget", "3sat-sumt", "--cnf", kFixture}).code == 3);
}

TEST_CASE("bench prints a table") {
    const auto r = run({"bench", "--algorithm", "wspt", "--count", "2", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("wspt") != std::string::npos);
    CHECK(r.out.find("mean_ms") != std::string::npos);
}
