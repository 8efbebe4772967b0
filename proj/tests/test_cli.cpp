#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace spreadlab;
namespace fs = std::filesystem;

namespace {

std::string sporadic(const std::string& stem, const std::string& kind) {
    return oracle::data("sporadic/" + stem + "." + kind + ".json").string();
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("spreadlab_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(BwExpected, Branches) {
    EXPECT_EQ(bw_expected(13), 12u);
    EXPECT_EQ(bw_expected(11), 7u);
    EXPECT_EQ(bw_expected(8), 6u);
    EXPECT_EQ(bw_expected(16), 14u);
    EXPECT_EQ(bw_expected(19), 15u);
    EXPECT_EQ(bw_expected(4), 2u);
}

TEST(BwExpected, OutOfRange) {
    for (unsigned long long q : {2ULL, 3ULL, 5ULL, 7ULL, 9ULL, 12ULL, 15ULL}) EXPECT_THROW(bw_expected(q), OutOfRange) << q;
}

TEST(Cli, ExactSpreadA5) {
    RunReport r = cmd_exact_spread(oracle::data("groups/a5.spec.json").string(), {});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.machine["spread"], "2");
    EXPECT_EQ(r.machine["witness_supports"], true);
    EXPECT_NE(r.text.find("s(A5) = 2"), std::string::npos);
}

TEST(Cli, ExactSpreadBudgetExit3) {
    CoverSearchConfig cfg;
    cfg.node_budget = 3;
    RunReport r = cmd_exact_spread(oracle::data("groups/m11.spec.json").string(), cfg);
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_EQ(r.machine["status"], "budget-exhausted");
}

TEST(Cli, MachineReportIsBitStableAcrossThreads) {
    for (const char* stem : {"a6", "m11"}) {
        std::vector<std::string> out;
        for (unsigned t : {1u, 2u, 8u}) {
            CoverSearchConfig cfg;
            cfg.threads = t;
            out.push_back(cmd_exact_spread(oracle::data(std::string("groups/") + stem + ".spec.json").string(), cfg)
                              .render(Format::Machine));
        }
        EXPECT_EQ(out[0], out[1]) << stem;
        EXPECT_EQ(out[0], out[2]) << stem;
    }
}

TEST(Cli, InputErrorsExit2) {
    EXPECT_EQ(cmd_exact_spread("/nonexistent/x.spec.json", {}).exit_code, 2);
    fs::path d = scratch("bad");
    std::ofstream(d / "bad.spec.json") << "{ not json";
    RunReport r = cmd_exact_spread((d / "bad.spec.json").string(), {});
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_EQ(r.machine["check"], "parse");
    EXPECT_EQ(cmd_trick(sporadic("ru", "table"), "99Z").exit_code, 2);
    EXPECT_EQ(cmd_bw(9, false, {}).exit_code, 2);
}

TEST(Cli, SpreadAtLeast) {
    const std::string a5 = oracle::data("groups/a5.spec.json").string();
    EXPECT_EQ(cmd_spread_atleast(a5, 2, {}).exit_code, 0);
    RunReport r = cmd_spread_atleast(a5, 3, {});
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(r.machine["witness"].size(), 3u);
    EXPECT_EQ(r.machine["witness_supports"], true);
}

TEST(Cli, BoundClass) {
    RunReport r = cmd_bound_class(sporadic("m", "table"), "2B");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.machine["bound"], "5791748068511982636944259374");
    RunReport a = cmd_bound_class(oracle::data("groups/a5.spec.json").string(), "2A");
    EXPECT_EQ(a.machine["level"], "element");
    EXPECT_TRUE(a.exit_code == 0 || a.exit_code == 1);
}

TEST(Cli, TrickRu) {
    RunReport r = cmd_trick(sporadic("ru", "table"), "2B");
    EXPECT_EQ(r.exit_code, 0);
    std::set<std::string> res;
    for (const auto& c : r.machine["residual"]) res.insert(c.get<std::string>());
    EXPECT_TRUE(res.count("15A") && res.count("29A"));
    EXPECT_EQ(cmd_trick(sporadic("ru", "table"), "4A").exit_code, 1);
}

TEST(Cli, CertifyRuAndJ4) {
    RunReport r = cmd_certify(sporadic("ru", "table"), sporadic("ru", "cert"));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.machine["bound"], "1252799");
    RunReport j = cmd_certify(sporadic("j4", "table"), sporadic("j4", "cert"));
    EXPECT_EQ(j.exit_code, 0);
    EXPECT_EQ(j.machine["bound"], "47766599363");
}

TEST(Cli, CertifyTamperedPowerMapExit1) {
    fs::path d = scratch("tamper");
    Json t = Json::parse(oracle::read(sporadic("ru", "table")));
    t["powerMaps"]["2"]["14A"] = "2A";
    std::ofstream(d / "ru.table.json") << t.dump(2);
    RunReport r = cmd_certify((d / "ru.table.json").string(), sporadic("ru", "cert"));
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(r.machine["check"], "power-map-order");
    EXPECT_NE(r.text.find("FAILED [power-map-order]"), std::string::npos);
}

TEST(Cli, VerifyTable1Full) {
    RunReport r = cmd_verify_table1(oracle::data("sporadic").string());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.machine["certified"], 11);
    EXPECT_EQ(r.machine["passthrough"], 15);
    for (const auto& row : r.machine["rows"]) {
        if (row["name"] == "M") {
            EXPECT_EQ(row["bound"], "5791748068511982636944259374");
            EXPECT_EQ(row["status"], "certified");
        }
        if (row["status"] == "passthrough") EXPECT_FALSE(row["source"].get<std::string>().empty());
    }
}

TEST(Cli, VerifyTable1EmptyDirectory) {
    RunReport r = cmd_verify_table1(scratch("empty").string());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.machine["rows"].empty());
}

TEST(Cli, VerifyTable1AggregatesFailures) {
    fs::path d = scratch("agg");
    fs::copy_file(sporadic("ru", "table"), d / "ru.table.json");
    Json c = Json::parse(oracle::read(sporadic("ru", "cert")));
    c["residual"] = {"15A", "29A"};
    c["evidence"].erase("29B");
    std::ofstream(d / "ru.cert.json") << c.dump(2);
    RunReport r = cmd_verify_table1(d.string());
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(r.machine["rows"][0]["status"], "failed");
}

TEST(Cli, TableCommandMatchesFixture) {
    RunReport r = cmd_table(oracle::data("groups/m11.spec.json").string());
    EXPECT_EQ(r.render(Format::Text), oracle::read(oracle::data("groups/m11.table.json")));
}
