#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "schur/cli.hpp"

using namespace schur;

TEST_CASE("decompose report carries exact amplitudes in both renderings") {
    auto r = cli::decompose_report("su2:(2,1);1;1,0");
    CHECK(r.pass);
    auto j = nlohmann::json::parse(r.json);
    CHECK(j["command"] == "decompose");
    CHECK(j["outputs"]["norm_squared"] == "1");
    REQUIRE(j["outputs"]["amplitudes"].size() == 3);
    bool found = false;
    for (const auto& row : j["outputs"]["amplitudes"])
        if (row["key"] == "110") {
            found = true;
            CHECK(row["amp"][0]["sign"] == 1);
            CHECK(row["amp"][0]["num"] == 2);
            CHECK(row["amp"][0]["den"] == 3);
        }
    CHECK(found);
    CHECK(r.text.find("|110>") != std::string::npos);
}

TEST_CASE("reports are deterministic modulo the timestamp") {
    auto a = nlohmann::json::parse(cli::verify_report(Group::SU2, 2, 2).json);
    auto b = nlohmann::json::parse(cli::verify_report(Group::SU2, 2, 1).json);
    a.erase("timestamp");
    b.erase("timestamp");
    a["inputs"].erase("threads");
    b["inputs"].erase("threads");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("decompose rejects bad labels with the violated constraint") {
    CHECK_THROWS_WITH_AS(cli::decompose_report("su2:(2,1);1;0,0"),
                         doctest::Contains("illegal addition"), std::invalid_argument);
    CHECK_THROWS_AS(cli::decompose_report("su2:(2,1);7;1,0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::decompose_report("nonsense"), std::invalid_argument);
}

TEST_CASE("verify passes the tiny sweeps") {
    CHECK(cli::verify_report(Group::SU2, 1, 1).pass);  // no cascade, trivially green
    CHECK(cli::verify_report(Group::SU2, 3, 2).pass);
    CHECK(cli::verify_report(Group::SU3, 2, 2).pass);
}

TEST_CASE("resources report passes for both groups") {
    CHECK(cli::resources_report(Group::SU2, 4).pass);
    CHECK(cli::resources_report(Group::SU3, 4).pass);
}

TEST_CASE("isoscalar table lists the de Swart seed") {
    auto r = cli::isoscalar_table_report(1, 0);
    auto j = nlohmann::json::parse(r.json);
    bool seed = false;
    for (const auto& row : j["outputs"]["rows"])
        if (row["p"] == 2 && row["quark"] == "u" && row["child_k"] == 2 &&
            row["parent_k"] == 1 && row["sign"] == 1 && row["num"] == 1 && row["den"] == 1)
            seed = true;
    CHECK(seed);
}

TEST_CASE("synthesize and simulate round trip through a file") {
    auto syn = cli::synthesize_report(Group::SU3, 3, "/tmp/schur_test_circuit.json");
    CHECK(syn.pass);
    auto sim = cli::simulate_report("/tmp/schur_test_circuit.json", "su3:(1,1,1);0,0,0;1,0",
                                    "exact");
    CHECK(sim.pass);
    auto j = nlohmann::json::parse(sim.json);
    CHECK(j["outputs"]["amplitudes"].size() == 6);
    auto simf = cli::simulate_report("/tmp/schur_test_circuit.json", "su3:(1,1,1);0,0,0;1,0",
                                     "float");
    CHECK(simf.pass);
}
