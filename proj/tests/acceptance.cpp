#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"

using namespace ramcond;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kScenarios = RAMCOND_SOURCE_DIR "/scenarios/";
const std::string kData = RAMCOND_SOURCE_DIR "/tests/data/";

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass) detail = what;
            pass = false;
        }
    }
};

std::string first_failure(const SuiteResult& r)
{
    for (const auto& c : r.checks)
        if (!c.pass) return r.suite + ": " + c.name + " (" + c.lhs + " vs " + c.rhs + ")";
    return "";
}

void absorb(Verdict& v, const SuiteResult& r)
{
    v.require(r.ok(), first_failure(r));
}

int failures = 0;

void criterion(int n, const std::string& title, const std::function<Verdict()>& body)
{
    const auto t0 = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", secs);
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << "  [" << time << "]";
    if (!v.detail.empty()) std::cout << "  " << v.detail;
    std::cout << "\n";
    failures += !v.pass;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct CliRun {
    int code;
    cli::ojson report;
};

CliRun cli_json(const std::vector<std::string>& args)
{
    std::vector<std::string> full{"--json"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cli::run(full, out, err);
    return {code, out.str().empty() ? cli::ojson() : cli::ojson::parse(out.str())};
}

std::string cell(const cli::ojson& report, const std::string& table, const std::string& key, const std::string& match,
                 const std::string& column)
{
    for (const auto& row : report["tables"][table]) {
        const std::string k = row[key].is_string() ? row[key].get<std::string>() : row[key].dump();
        if (k == match) return row[column].is_string() ? row[column].get<std::string>() : row[column].dump();
    }
    return "<missing>";
}

} // namespace

int main()
{
    const auto cat = catalog();
    const std::uint64_t seed = 42;

    criterion(1, "bisection identity on the catalog and 200 random chains, under 10 s", [&] {
        Verdict v;
        const auto t0 = Clock::now();
        std::size_t tame = 0, wild2 = 0, wild3 = 0, mixed = 0, klein = 0;
        for (const auto& fx : cat) {
            tame += fx.id.rfind("tame_", 0) == 0;
            wild2 += fx.id.rfind("wild_", 0) == 0 && fx.rd.prime() == 2;
            wild3 += fx.id.rfind("wild_", 0) == 0 && fx.rd.prime() == 3;
            mixed += fx.id.rfind("mixed_", 0) == 0;
            klein += fx.id.rfind("klein4_p2", 0) == 0;
        }
        v.require(cat.size() >= 12 && tame >= 6 && wild2 && wild3 && mixed && klein, "catalog composition");
        const auto a = suites::bisection(cat);
        const auto b = suites::bisection_random(seed, 200);
        absorb(v, a);
        absorb(v, b);
        std::size_t random_cases = 0;
        for (const auto& c : b.checks) random_cases += c.name.rfind("bisection/", 0) == 0;
        v.require(random_cases == 200, "expected 200 random bisection checks");
        RandomRamData gen(seed);
        for (int i = 0; i < 200; ++i) v.require(gen.next().group().order() <= 24, "random |Γ| exceeds 24");
        const double secs = seconds_since(t0);
        v.require(secs < 10.0, "runtime " + std::to_string(secs) + " s");
        if (v.pass) v.detail = std::to_string(cat.size()) + " fixtures, 200 random, " + std::to_string(a.checks.size() + b.checks.size()) + " checks";
        return v;
    });

    criterion(2, "bA(e) = disc/2 and the Artin character sums to 0 on all fixtures", [&] {
        Verdict v;
        const Rational half(Integer(1), Integer(2));
        for (const auto& fx : cat) {
            const auto b = bisection(fx.rd);
            const auto a = artin_character(fx.rd);
            const Rational d(disc_valuation(fx.rd, Subgroup::trivial(fx.rd.group())));
            v.require(b(0) == CycloNum(half * d), fx.id + ": bA(e) = " + b(0).to_string());
            CycloNum sum(0);
            for (const auto& x : a.values()) sum += x;
            v.require(sum == CycloNum(0), fx.id + ": Σ a = " + sum.to_string());
        }
        return v;
    });

    criterion(3, "conductor oracles for tame cyclic 3 and wild cyclic 2", [&] {
        Verdict v;
        const auto tame = RamData::tame_cyclic(3, 2);
        const auto c3 = tame.group();
        const CharModule rot = CharModule::from_generators(
            "rotation", c3, 2, 2, {{1, QMatrix{{Rational(0), Rational(-1)}, {Rational(1), Rational(-1)}}}});
        v.require(conductor(CharModule::regular(c3, 2), tame).value == Rational(1), "c(regular) ≠ 1");
        v.require(conductor(CharModule::trivial(c3, 2, 1), tame).value == Rational(0), "c(trivial) ≠ 0");
        v.require(conductor(rot, tame).value == Rational(1), "c(rotation) ≠ 1");
        const FiniteGroup c2 = FiniteGroup::cyclic(2);
        const RamData wild(c2, 2, {Subgroup::whole(c2)}, RamData::OmegaCosetMap{{0, 0}});
        const CharModule sign("sign", c2, 2, {QMatrix{{Rational(1)}}, QMatrix{{Rational(-1)}}});
        v.require(conductor(sign, wild).value == Rational(1), "c(sign) ≠ 1");
        v.require(artin_conductor(wild, sign.character()) == CycloNum(2), "Artin conductor of sign ≠ 2");
        return v;
    });

    criterion(4, "induction formula for every fixture, subgroup, and {trivial:1, regular}", [&] {
        Verdict v;
        const auto r = suites::induction(cat);
        absorb(v, r);
        std::size_t gm = 0;
        for (const auto& c : r.checks) gm += c.name.rfind("res_gm/", 0) == 0;
        v.require(gm == cat.size(), "H = {e} case missing for some fixture");
        if (v.pass) v.detail = std::to_string(r.checks.size()) + " checks";
        return v;
    });

    criterion(5, "restriction identity of bA for all fixture/subgroup pairs", [&] {
        Verdict v;
        const auto r = suites::restriction(cat);
        absorb(v, r);
        if (v.pass) v.detail = std::to_string(r.checks.size()) + " pairs";
        return v;
    });

    criterion(6, "isogeny invariance on 50 random conjugated pairs", [&] {
        Verdict v;
        const auto r = suites::isogeny(cat, seed, 50);
        absorb(v, r);
        v.require(r.checks.size() == 50, "expected 50 pairs");
        return v;
    });

    SuiteResult series{"series_laws", {}};
    double series_secs = 0;
    {
        const auto t0 = Clock::now();
        try {
            series = suites::series_laws(seed);
        } catch (const std::exception& e) {
            series.checks.push_back({"series_laws", false, "exception", e.what()});
        }
        series_secs = seconds_since(t0);
    }

    criterion(7, "series laws at D = 16 for p in {2, 3}, under 30 s", [&] {
        Verdict v;
        std::size_t gauss = 0, endo = 0, law = 0, wdiv = 0, oracle = 0;
        for (const auto& c : series.checks) {
            if (c.name.rfind("dilatation", 0) == 0) continue;
            v.require(c.pass, c.name + " (" + c.lhs + " vs " + c.rhs + ")");
            gauss += c.name.rfind("gauss_multiplicative/", 0) == 0;
            endo += c.name.rfind("endo_compose/", 0) == 0;
            law += c.name.rfind("formal_group_hom/", 0) == 0;
            wdiv += c.name.rfind("weierstrass/", 0) == 0 && c.name.find("/reconstruct") != std::string::npos;
            oracle += c.name.rfind("weierstrass_oracle/", 0) == 0;
        }
        v.require(gauss == 200, "expected 100 Gauss pairs per prime");
        v.require(endo >= 2 * 81, "endomorphism grid incomplete");
        v.require(law >= 4, "formal group law checks missing");
        v.require(wdiv == 100, "expected 50 Weierstrass pairs per prime, got " + std::to_string(wdiv));
        v.require(oracle == 1, "exact Weierstrass oracle missing");
        v.require(series_secs < 30.0, "runtime " + std::to_string(series_secs) + " s");
        char buf[64];
        std::snprintf(buf, sizeof buf, "suite ran in %.2fs", series_secs);
        if (v.pass) v.detail = buf;
        return v;
    });

    criterion(8, "dilatation monotonicity on 100 random series and the p^-2 S^2 oracle", [&] {
        Verdict v;
        std::size_t mono = 0, oracle = 0;
        for (const auto& c : series.checks) {
            if (c.name.rfind("dilatation", 0) != 0) continue;
            v.require(c.pass, c.name + " (" + c.lhs + " vs " + c.rhs + ")");
            mono += c.name.rfind("dilatation_monotone/", 0) == 0;
            oracle += c.name.rfind("dilatation_oracle/", 0) == 0;
        }
        v.require(mono == 200 && oracle == 2, "expected 100 cases and the oracle per prime");
        return v;
    });

    criterion(9, "adapt_lattice passes the checker on the C2/p=3 fixture and 20 random instances", [&] {
        Verdict v;
        const auto r = suites::lattice(seed, 20, 8);
        absorb(v, r);
        std::size_t adapt = 0, nested = 0;
        for (const auto& c : r.checks) {
            adapt += c.name.rfind("adapt/", 0) == 0;
            nested += c.name.rfind("adapt_nested/", 0) == 0;
        }
        v.require(adapt == 21 && nested == 21, "instance count");
        return v;
    });

    criterion(10, "CLI reproduces criteria 1-4 from the shipped scenarios; exit codes 0/1/2", [&] {
        Verdict v;
        const std::vector<std::string> names{"tame_cyclic3", "wild_cyclic2", "mixed_c3xc2"};
        for (const auto& n : names) {
            const std::string path = kScenarios + n + ".json";
            const Scenario s = load_scenario(path);
            const RamData rd = s.ramdata();
            const auto b = bisection(rd);
            const auto bis = cli_json({"bisect", path});
            v.require(bis.code == 0 && bis.report["summary"]["failed"] == 0, n + ": bisect");
            v.require(bis.report["tables"]["identity"][0]["bA"] == b(0).to_string(), n + ": bA(e)");
            for (ElementId e = 1; e < rd.group().order(); ++e)
                v.require(cell(bis.report, "elements", "element", std::to_string(e), "bA") == b(e).to_string(),
                          n + ": bA(" + std::to_string(e) + ")");
            const auto con = cli_json({"conduct", path});
            v.require(con.code == 0, n + ": conduct exit code");
            for (const auto& m : s.modules)
                v.require(cell(con.report, "conductors", "name", m.name, "conductor") ==
                              conductor(s.module(m), rd).value.to_string(),
                          n + ": conductor of " + m.name);
            const auto wl = cli_json({"weil", path});
            v.require(wl.code == 0 && wl.report["summary"]["failed"] == 0, n + ": weil");
            for (std::size_t i = 0; i < s.weil.size(); ++i) {
                const auto h = s.subgroup(s.weil[i].subgroup);
                const auto m = s.module_on(s.module_spec(s.weil[i].module), h);
                const auto& row = wl.report["tables"]["weil"][i];
                v.require(row["direct"] == conductor(weil_restriction(m, h), rd).value.to_string() &&
                              row["induction"] == conductor_via_induction(m, rd, h).value.to_string(),
                          n + ": weil row " + std::to_string(i));
            }
            for (const auto* cmd : {"bisect", "conduct", "weil"}) {
                std::ostringstream a, e1, b2, e2;
                cli::run({"--json", cmd, path}, a, e1);
                const std::string echo_path = "/tmp/ramcond_acceptance_echo.json";
                std::ofstream(echo_path) << cli::ojson::parse(a.str())["scenario"].dump();
                cli::run({"--json", cmd, echo_path}, b2, e2);
                v.require(a.str() == b2.str(), n + ": echo round trip for " + cmd);
            }
        }
        const auto tame = cli_json({"conduct", kScenarios + "tame_cyclic3.json"});
        v.require(cell(tame.report, "conductors", "name", "regular", "conductor") == "1" &&
                      cell(tame.report, "conductors", "name", "trivial", "conductor") == "0" &&
                      cell(tame.report, "conductors", "name", "rotation", "conductor") == "1",
                  "tame cyclic 3 oracle values");
        const auto wild = cli_json({"conduct", kScenarios + "wild_cyclic2.json"});
        v.require(cell(wild.report, "conductors", "name", "sign", "conductor") == "1" &&
                      cell(wild.report, "conductors", "name", "sign", "artin_conductor") == "2",
                  "wild cyclic 2 oracle values");
        const auto corrupt = cli_json({"verify", kData + "corrupt_filtration.json"});
        v.require(corrupt.code == 2 && corrupt.report["error"]["invariant"] == "RamData.chain_descending",
                  "corrupt filtration must exit 2 naming the invariant");
        const auto nonint = cli_json({"weil", kData + "nonintegral_disc.json"});
        v.require(nonint.code == 1, "assertion failure must exit 1");
        return v;
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : "all criteria passed\n");
    return failures ? 1 : 0;
}
