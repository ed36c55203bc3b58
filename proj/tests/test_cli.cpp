#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace ramcond;
using ramcond::cli::ojson;

namespace {

const std::string kScenarios = RAMCOND_SOURCE_DIR "/scenarios/";
const std::string kData = RAMCOND_SOURCE_DIR "/tests/data/";

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

ojson run_json(std::vector<std::string> args, int expect = 0)
{
    args.insert(args.begin(), "--json");
    const auto o = run(args);
    EXPECT_EQ(o.code, expect) << o.err;
    return ojson::parse(o.out);
}

std::string write_temp(const std::string& name, const std::string& text)
{
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

std::string row_value(const ojson& report, const std::string& table, const std::string& key, const std::string& match,
                      const std::string& column)
{
    for (const auto& row : report["tables"][table])
        if (row[key].dump() == match || (row[key].is_string() && row[key].get<std::string>() == match))
            return row[column].is_string() ? row[column].get<std::string>() : row[column].dump();
    return "<missing>";
}

} // namespace

TEST(Cli, BisectTameCyclic3)
{
    const auto r = run_json({"bisect", kScenarios + "tame_cyclic3.json"});
    EXPECT_EQ(r["tables"]["identity"][0]["bA"], "1");
    EXPECT_EQ(row_value(r, "elements", "element", "1", "bA"), "-2/3 + (-1/3)·ζ_3");
    EXPECT_EQ(row_value(r, "elements", "element", "1", "bA_decimal"), "-0.500-0.289i");
    EXPECT_EQ(r["summary"]["failed"], 0);
    EXPECT_EQ(r["tool_version"], RAMCOND_VERSION);
    EXPECT_EQ(r["scenario_digest"].get<std::string>().size(), 16u);
    EXPECT_TRUE(r["provenance"].contains("bA"));
}

TEST(Cli, BisectWildCyclic2)
{
    const auto r = run_json({"bisect", kScenarios + "wild_cyclic2.json"});
    EXPECT_EQ(r["tables"]["identity"][0]["bA"], "1");
    EXPECT_EQ(row_value(r, "elements", "element", "1", "bA"), "-1");
}

TEST(Cli, BisectTrivialGroup)
{
    const auto path = write_temp("trivial.json", R"({"p": 3, "group": {"cyclic": 1}})");
    const auto r = run_json({"bisect", path});
    EXPECT_TRUE(r["tables"]["elements"].empty());
    EXPECT_EQ(r["tables"]["identity"][0]["bA"], "0");
}

TEST(Cli, ConductValues)
{
    const auto t = run_json({"conduct", kScenarios + "tame_cyclic3.json"});
    EXPECT_EQ(row_value(t, "conductors", "name", "regular", "conductor"), "1");
    EXPECT_EQ(row_value(t, "conductors", "name", "trivial", "conductor"), "0");
    EXPECT_EQ(row_value(t, "conductors", "name", "rotation", "conductor"), "1");
    EXPECT_EQ(row_value(t, "conductors", "name", "trivial5", "conductor"), "0");
    const auto w = run_json({"conduct", kScenarios + "wild_cyclic2.json"});
    EXPECT_EQ(row_value(w, "conductors", "name", "sign", "conductor"), "1");
    EXPECT_EQ(row_value(w, "conductors", "name", "sign", "artin_conductor"), "2");
}

TEST(Cli, WeilValues)
{
    const auto t = run_json({"weil", kScenarios + "tame_cyclic3.json"});
    const auto& first = t["tables"]["weil"][0];
    EXPECT_EQ(first["direct"], "1");
    EXPECT_EQ(first["induction"], "1");
    EXPECT_EQ(first["disc_valuation"], 2);
    EXPECT_EQ(first["conductor_over_L"], "0");
    const auto& whole = t["tables"]["weil"][1];
    EXPECT_EQ(whole["direct"], whole["induction"]);
    const auto w = run_json({"weil", kScenarios + "wild_cyclic2.json"});
    EXPECT_EQ(w["tables"]["weil"][0]["direct"], "1");
    EXPECT_EQ(w["tables"]["weil"][0]["induction"], "1");
}

TEST(Cli, EchoRoundTripIsByteIdentical)
{
    for (const auto* name : {"tame_cyclic3.json", "wild_cyclic2.json", "mixed_c3xc2.json"})
        for (const auto* cmd : {"bisect", "conduct", "weil"}) {
            const auto first = run({"--json", cmd, kScenarios + name});
            ASSERT_EQ(first.code, 0) << first.err;
            const auto echo = ojson::parse(first.out)["scenario"].dump();
            const auto second = run({"--json", cmd, write_temp("echo.json", echo)});
            EXPECT_EQ(first.out, second.out) << name << " " << cmd;
        }
}

TEST(Cli, CsvExport)
{
    const auto o = run({"--csv", "conduct", kScenarios + "tame_cyclic3.json"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("# conductors\nname,rank,conductor,artin_conductor,denominator_bound\nregular,3,1,2,3\n"),
              std::string::npos)
        << o.out;
}

TEST(Cli, DecimalDigits)
{
    const auto r = run_json({"--decimal-digits", "5", "bisect", kScenarios + "tame_cyclic3.json"});
    EXPECT_EQ(row_value(r, "elements", "element", "1", "bA_decimal"), "-0.50000-0.28868i");
}

TEST(Cli, InvalidInputsExitTwo)
{
    const auto corrupt = run({"verify", kData + "corrupt_filtration.json"});
    EXPECT_EQ(corrupt.code, 2);
    EXPECT_NE(corrupt.err.find("RamData.chain_descending"), std::string::npos) << corrupt.err;

    const auto named = run_json({"conduct", kData + "corrupt_filtration.json"}, 2);
    EXPECT_EQ(named["error"]["invariant"], "RamData.chain_descending");

    const std::vector<std::pair<std::string, std::string>> cases{
        {R"({"p": 2, "group": {"cyclic": 2}, "colour": 1})", "Scenario.unknown_key"},
        {R"({"p": 4, "group": {"cyclic": 2}})", "RamData.prime"},
        {R"({"p": 2, "group": {"cyclic": 2}, "modules": [{"name": "m", "spec": "regular", "x": 1}]})",
         "Scenario.unknown_key"},
        {R"({"p": 2, "group": {"cyclic": 2}, "modules": [{"name": "m", "generators": [{"element": 1, "matrix": [[0.5]]}]}]})",
         "Scenario.rational"},
        {R"({"p": 3, "group": {"cyclic": 2}, "omega": {"generator": 1, "exponent": 1}, "modules": [{"name": "m", "generators": [{"element": 1, "matrix": [["2"]]}]}]})",
         "CharModule.homomorphism"},
        {R"({"p": 3, "group": {"cyclic": 3}, "filtration": [[0, 1]]})", "Subgroup.inverse"},
        {R"({"p": 2, "group": {"cyclic": 3}, "omega": {"generator": 1, "exponent": 3}})", "RamData.omega_injective"},
        {R"({"p": 2, "group": {"table": [[0, 1], [1, 1]]}})", "FiniteGroup.inverse"},
        {R"({"p": 3, "group": {"cyclic": 2}, "omega": {"generator": 1, "exponent": 1}, "weil": [{"module": "nope", "subgroup": [0]}]})",
         "Scenario.module_reference"},
        {R"({"p": 3, "group": {"cyclic": 1}, "series": [{"op": "gauss", "f": "S $"}]})", "Series.syntax"},
        {"{not json", "Scenario.json"},
    };
    for (const auto& [text, invariant] : cases) {
        const auto r = run_json({"conduct", write_temp("bad.json", text)}, 2);
        EXPECT_EQ(r["error"]["invariant"], invariant) << text << " -> " << r.dump();
    }
    EXPECT_EQ(run({"conduct", kData + "missing.json"}).code, 2);
    EXPECT_EQ(run({"series", "gauss", "S^-1"}).code, 2);
    EXPECT_EQ(run({"series", "wdiv", "Z", "Z+1"}).code, 2);
    EXPECT_EQ(run({"series", "endo", "apply", "1/2"}).code, 2);
    EXPECT_EQ(run({"series", "gauss", "S", "--p", "6"}).code, 2);
    EXPECT_EQ(run({"verify", "--random", "x", "3"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, AssertionFailureExitsOne)
{
    // breaks 1, 2 on V4 with Γ_2 = ⟨1⟩: v_K(disc) over the fixed field of ⟨2⟩ is 5/2
    const auto path = write_temp("nonintegral.json", R"({
      "p": 2, "group": {"named": "V4"}, "filtration": [[0, 1, 2, 3], [0, 1]],
      "modules": [{"name": "trivial", "spec": "trivial:1"}],
      "weil": [{"module": "trivial", "subgroup": [0, 2]}]
    })");
    EXPECT_EQ(run({"bisect", path}).code, 0);
    const auto r = run_json({"weil", path}, 1);
    EXPECT_EQ(r["summary"]["assertion_failed"], true);
    EXPECT_EQ(r["checks"][0]["status"], "fail");
}

TEST(Cli, VerifyCatalogAndRandom)
{
    const auto c = run_json({"verify", "--catalog"});
    EXPECT_EQ(c["summary"]["failed"], 0);
    EXPECT_GE(c["tables"]["suites"].size(), 6u);
    const auto r = run_json({"verify", "--random", "42", "200"});
    EXPECT_EQ(r["summary"]["failed"], 0);
    EXPECT_EQ(r["tables"]["suites"][0]["suite"], "bisection_random");
    EXPECT_EQ(r["tables"]["suites"][0]["passed"], 800);
}

TEST(Cli, VerifyIsDeterministic)
{
    const auto a = run({"--json", "verify", "--random", "7", "20"});
    const auto b = run({"--json", "verify", "--random", "7", "20"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SeriesCommands)
{
    const auto g = run_json({"series", "gauss", "p^-2*S + 3*T", "--p", "3"});
    EXPECT_EQ(g["tables"]["gauss"][0]["valuation"], "-2");
    const auto w = run_json({"series", "wdiv", "Z^3", "Z^2-2", "--p", "2"});
    EXPECT_EQ(w["tables"]["wdiv"][0]["q"], "Z");
    EXPECT_EQ(w["tables"]["wdiv"][0]["r"], "2*Z");
    const auto e = run_json({"series", "endo", "compose", "2", "3"});
    EXPECT_EQ(e["tables"]["endo"][0]["scalar"], "6");
    const auto l = run_json({"series", "endo", "law", "-1"});
    EXPECT_EQ(l["tables"]["endo"][0]["homomorphism"], true);
    const auto d = run_json({"series", "dilate", "p^-2*S^2", "1"});
    EXPECT_EQ(d["tables"]["dilate"][0]["member"], true);
    EXPECT_EQ(d["tables"]["dilate"][1]["member"], false);
    const auto s = run_json({"series", "run", kScenarios + "tame_cyclic3.json"});
    EXPECT_EQ(s["tables"]["gauss"][0]["valuation"], "-2");
    EXPECT_EQ(s["tables"]["wdiv"][0]["r"], "2*Z");
    EXPECT_EQ(s["tables"]["endo"][0]["scalar"], "6");
}

TEST(Cli, DegreeCapFlag)
{
    const auto w = run_json({"--degree-cap", "6", "series", "wdiv", "Z^3", "Z^2-2"});
    EXPECT_EQ(w["tables"]["wdiv"][0]["degree_cap"], 6);
    EXPECT_EQ(run({"--degree-cap", "0", "series", "gauss", "S"}).code, 2);
}
