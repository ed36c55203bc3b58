#pragma once

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ramcond/scenario.hpp"
#include "ramcond/suites.hpp"

#ifndef RAMCOND_VERSION
#define RAMCOND_VERSION "0.0.0"
#endif

namespace ramcond::cli {

using ojson = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, check_failed = 1, invalid_input = 2 };

struct Options {
    bool json = false;
    bool csv = false;
    int digits = 3;
    std::optional<unsigned> degree_cap;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;
};

struct Report {
    std::string command;
    std::optional<Scenario> scenario;
    std::vector<Table> tables;
    std::vector<Check> checks;
    ojson provenance = ojson::object();
    bool assertion_failed = false;

    Table& table(std::string name, std::vector<std::string> columns)
    {
        tables.push_back({std::move(name), std::move(columns), {}});
        return tables.back();
    }
    void check(std::string name, const std::string& lhs, const std::string& rhs, bool pass)
    {
        checks.push_back({std::move(name), pass, lhs, rhs});
    }
    std::size_t failed() const
    {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }
    int exit_code() const { return assertion_failed || failed() ? check_failed : ok; }
};

inline std::string id_set(const std::vector<ElementId>& ids)
{
    std::string s = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
    return s + "}";
}

// ---- rendering ----

inline ojson to_ojson(const Report& r)
{
    ojson out;
    out["tool_version"] = RAMCOND_VERSION;
    out["command"] = r.command;
    if (r.scenario) {
        out["scenario_digest"] = scenario_digest(*r.scenario);
        out["scenario"] = ojson::parse(scenario_json(*r.scenario).dump());
    }
    ojson tables = ojson::object();
    for (const auto& t : r.tables) {
        ojson rows = ojson::array();
        for (const auto& row : t.rows) {
            ojson o = ojson::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = row[i];
            rows.push_back(o);
        }
        tables[t.name] = rows;
    }
    out["tables"] = tables;
    ojson checks = ojson::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    out["checks"] = checks;
    out["summary"] = {{"checks", r.checks.size()}, {"failed", r.failed()}, {"assertion_failed", r.assertion_failed}};
    out["provenance"] = r.provenance;
    return out;
}

inline std::string cell_text(const ojson& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    return v.dump();
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

// Display width in code points, for column alignment.
inline std::size_t text_width(const std::string& s)
{
    std::size_t w = 0;
    for (unsigned char c : s) w += (c & 0xC0) != 0x80;
    return w;
}

inline void render_text(const Report& r, std::ostream& out)
{
    out << r.command;
    if (r.scenario) {
        if (!r.scenario->name.empty()) out << "  scenario " << r.scenario->name;
        out << "  digest " << scenario_digest(*r.scenario);
    }
    out << "\n";
    for (const auto& t : r.tables) {
        out << "\n[" << t.name << "]\n";
        std::vector<std::size_t> w(t.columns.size());
        for (std::size_t i = 0; i < t.columns.size(); ++i) w[i] = text_width(t.columns[i]);
        for (const auto& row : t.rows)
            for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], text_width(cell_text(row[i])));
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                s += cells[i];
                if (i + 1 < cells.size()) s += std::string(w[i] - text_width(cells[i]) + 2, ' ');
            }
            out << "  " << s << "\n";
        };
        line(t.columns);
        if (t.rows.empty()) out << "  (none)\n";
        for (const auto& row : t.rows) {
            std::vector<std::string> cells;
            for (const auto& v : row) cells.push_back(cell_text(v));
            line(cells);
        }
    }
    std::size_t shown = 0;
    for (const auto& c : r.checks)
        if (!c.pass && shown++ < 50) out << "FAIL " << c.name << ": " << c.lhs << " ≠ " << c.rhs << "\n";
    out << "\nchecks: " << r.checks.size() - r.failed() << " passed, " << r.failed() << " failed\n";
}

inline void render_csv(const Report& r, std::ostream& out)
{
    for (std::size_t k = 0; k < r.tables.size(); ++k) {
        const auto& t = r.tables[k];
        if (k) out << "\n";
        out << "# " << t.name << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_escape(t.columns[i]);
        out << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i]));
            out << "\n";
        }
    }
}

inline void render(const Report& r, const Options& o, std::ostream& out)
{
    if (o.json)
        out << to_ojson(r).dump(2) << "\n";
    else if (o.csv)
        render_csv(r, out);
    else
        render_text(r, out);
}

// ---- commands ----

inline Scenario load(const std::string& path, const Options& o)
{
    Scenario s = load_scenario(path);
    if (o.degree_cap) s.degree_cap = *o.degree_cap;
    return s;
}

inline Report cmd_bisect(const Scenario& s, const Options& o)
{
    Report r{"bisect", s, {}, {}, {}, false};
    const RamData rd = s.ramdata();
    const auto b = bisection(rd);
    const auto a = artin_character(rd);
    const auto& g = rd.group();
    const Rational half(Integer(1), Integer(2));
    const long disc = disc_valuation(rd, Subgroup::trivial(g));
    auto& id = r.table("identity", {"element", "a_gamma", "bA", "bA_decimal", "half_disc"});
    id.rows.push_back({0, a(0).to_string(), b(0).to_string(), b(0).to_decimal(o.digits),
                       (half * Rational(disc)).to_string()});
    auto& t = r.table("elements", {"element", "order", "in_wild_inertia", "i_gamma", "a_gamma", "omega", "bA",
                                   "bA_decimal"});
    for (ElementId e = 1; e < g.order(); ++e)
        t.rows.push_back({e, g.element_order(e), rd.wild_inertia().contains(e), i_gamma(rd, e), a(e).to_string(),
                          rd.omega(e).to_string(), b(e).to_string(), b(e).to_decimal(o.digits)});
    const auto conj = conjugate(b);
    for (ElementId e = 0; e < g.order(); ++e) {
        const auto lhs = b(e) + conj(e);
        r.check("bisection_identity/" + std::to_string(e), lhs.to_string(), a(e).to_string(), lhs == a(e));
    }
    r.check("identity_value", b(0).to_string(), (half * Rational(disc)).to_string(),
            b(0) == CycloNum(half * Rational(disc)));
    CycloNum total(0);
    for (const auto& v : a.values()) total += v;
    r.check("artin_sum_zero", total.to_string(), "0", total == CycloNum(0));
    r.provenance = {{"i_gamma", "1 + #{i >= 1 : s in Gamma_i}"},
                    {"a_gamma", "Artin character: -i_gamma(s) off e, sum of i_gamma at e"},
                    {"bA", "bisection: 1/(omega(s)-1) off Gamma_1, -i_gamma(s)/2 on Gamma_1 minus e, "
                           "sum of i_gamma / 2 at e"},
                    {"half_disc", "v_K(disc(K'/K)) / 2 = sum of i_gamma / 2"}};
    return r;
}

inline Report cmd_conduct(const Scenario& s, const Options&)
{
    Report r{"conduct", s, {}, {}, {}, false};
    const RamData rd = s.ramdata();
    const auto a = artin_character(rd);
    auto& t = r.table("conductors", {"name", "rank", "conductor", "artin_conductor", "denominator_bound"});
    for (const auto& spec : s.modules) {
        const CharModule m = s.module(spec);
        const std::string artin = artin_conductor(rd, m.character()).to_string();
        try {
            const auto c = conductor(m, rd);
            t.rows.push_back({m.name(), m.rank(), c.value.to_string(), artin, c.denominator_bound});
            r.check("conductor_rational/" + m.name(), c.value.to_string(), "rational, >= 0, |Γ|-integral", true);
        } catch (const AssertionFailure& e) {
            r.assertion_failed = true;
            t.rows.push_back({m.name(), m.rank(), "error", artin, rd.group().order()});
            r.check("conductor_rational/" + m.name(), e.what(), "rational, >= 0, |Γ|-integral", false);
        }
    }
    r.provenance = {{"conductor", "pairing (bA_Gamma, chi)"}, {"artin_conductor", "pairing (a_Gamma, chi)"}};
    return r;
}

inline Report cmd_weil(const Scenario& s, const Options&)
{
    Report r{"weil", s, {}, {}, {}, false};
    const RamData rd = s.ramdata();
    auto& t = r.table("weil", {"module", "subgroup", "index", "induced_rank", "direct", "induction",
                               "conductor_over_L", "disc_valuation", "match"});
    for (const auto& w : s.weil) {
        const Subgroup h = s.subgroup(w.subgroup);
        const CharModule m = s.module_on(s.module_spec(w.module), h);
        const std::string label = w.module + "@" + id_set(w.subgroup);
        try {
            const CharModule ind = weil_restriction(m, h);
            const auto direct = conductor(ind, rd);
            const auto formula = conductor_via_induction(m, rd, h);
            const auto over_l = conductor(m, restrict_ramdata(rd, h));
            const bool match = direct.value == formula.value;
            t.rows.push_back({w.module, id_set(w.subgroup), rd.group().order() / h.order(), ind.rank(),
                              direct.value.to_string(), formula.value.to_string(), over_l.value.to_string(),
                              disc_valuation(rd, h), match});
            r.check("induction_formula/" + label, direct.value.to_string(), formula.value.to_string(), match);
        } catch (const AssertionFailure& e) {
            r.assertion_failed = true;
            r.check("induction_formula/" + label, e.what(), "consistent", false);
        }
    }
    r.provenance = {{"direct", "pairing (bA_Gamma, chi of the induced module)"},
                    {"induction", "conductor over L + disc_valuation * rank / 2"},
                    {"conductor_over_L", "pairing (bA_H, chi) for the restricted ramification data"}};
    return r;
}

struct VerifyRequest {
    bool catalog = false;
    std::optional<std::pair<std::uint64_t, std::size_t>> random;
    std::optional<std::string> scenario;
};

inline Report cmd_verify(const VerifyRequest& v, const Options& o)
{
    Report r{"verify", std::nullopt, {}, {}, {}, false};
    suites::SeriesSuiteOptions series;
    if (o.degree_cap) series.degree_cap = *o.degree_cap;
    std::vector<SuiteResult> results;
    if (v.scenario) {
        const Scenario s = load(*v.scenario, o);
        r.scenario = s;
        const std::vector<Fixture> fx{{s.name.empty() ? "scenario" : s.name, s.ramdata()}};
        results.push_back(suites::bisection(fx));
        results.push_back(suites::frobenius(fx, 1));
        results.push_back(suites::restriction(fx));
        results.push_back(suites::induction(fx));
        results.push_back(suites::conductor_properties(fx, 1));
        if (fx.front().rd.group().order() > 1) results.push_back(suites::isogeny(fx, 1, 10));
    }
    if (v.catalog || (!v.scenario && !v.random)) {
        const auto cat = catalog();
        results.push_back(suites::bisection(cat));
        results.push_back(suites::frobenius(cat, 1));
        results.push_back(suites::restriction(cat));
        results.push_back(suites::induction(cat));
        results.push_back(suites::isogeny(cat, 1, 50));
        results.push_back(suites::conductor_properties(cat, 1));
        results.push_back(suites::series_laws(1, series));
        results.push_back(suites::lattice(1, 20));
    }
    if (v.random) {
        const auto [seed, count] = *v.random;
        const auto cat = catalog();
        results.push_back(suites::bisection_random(seed, count));
        results.push_back(suites::frobenius(cat, seed));
        results.push_back(suites::isogeny(cat, seed, 50));
        results.push_back(suites::series_laws(seed, series));
        results.push_back(suites::lattice(seed, 20));
    }
    auto& t = r.table("suites", {"suite", "passed", "failed"});
    for (const auto& res : results) {
        t.rows.push_back({res.suite, res.passed(), res.failed()});
        for (const auto& c : res.checks) r.checks.push_back({res.suite + ":" + c.name, c.pass, c.lhs, c.rhs});
    }
    r.provenance = {{"bisection", "bA + conjugate(bA) = a_Gamma; bA(e) = disc/2; sum of a_Gamma = 0"},
                    {"frobenius", "(Ind f, chi) = (f, Res chi)"},
                    {"restriction_identity", "Res bA_Gamma = bA_H + disc/2 * chi_reg(H)"},
                    {"induction_consistency", "c(Res_{L/K} G) = c(G over L) + disc/2 * dim G"},
                    {"isogeny_invariance", "conjugation by p-unit integer matrices preserves c"},
                    {"series_laws", "Gauss norm, endomorphisms, formal group law, Weierstrass, dilatation, descent"},
                    {"lattice_adaptation", "approximation modulo p^k, Gamma-span, independent checker"}};
    return r;
}

// ---- series ----

inline SeriesRingSpec ring_for(const std::vector<std::string>& texts, long p, const Options& o,
                               const std::string& last = "")
{
    return infer_ring(texts, p, o.degree_cap.value_or(16), last);
}

inline void series_gauss(Report& r, const std::string& f_text, long p, const Options& o)
{
    const auto ring = ring_for({f_text}, p, o);
    const auto f = parse_series(f_text, ring);
    auto& t = r.table("gauss", {"expression", "p", "parsed", "valuation", "lattice_member"});
    const Valuation v = gauss_valuation(f);
    t.rows.push_back({f_text, p, f.to_string(), v.to_string(), is_lattice_member(f)});
    r.provenance["valuation"] = "Gauss valuation: min over monomials of v_p(coefficient)";
}

inline void series_wdiv(Report& r, const std::string& g_text, const std::string& f_text, const std::string& var,
                        long p, const Options& o)
{
    const auto ring = ring_for({g_text, f_text}, p, o, var);
    const auto g = parse_series(g_text, ring), f = parse_series(f_text, ring);
    const auto d = is_distinguished(f, var);
    const auto res = weierstrass_divide(g, f, var);
    auto& t = r.table("wdiv", {"g", "f", "var", "q", "r", "residual_order", "exact", "precision", "degree_cap"});
    t.rows.push_back({g.to_string(), f.to_string(), var, res.quotient.to_string(), res.remainder.to_string(),
                      res.residual_order, res.exact, res.precision, ring.degree_cap});
    const auto recon = res.quotient * f + res.remainder;
    const Valuation err = gauss_valuation(recon - g);
    r.check("weierstrass_reconstruction", res.exact ? recon.to_string() : "ν(qf + r − g) = " + err.to_string(),
            res.exact ? g.to_string() : ">= " + std::to_string(res.precision),
            res.exact ? recon == g : err >= Valuation(res.precision));
    r.check("distinguished", d.distinguished ? "order " + std::to_string(*d.residual_order) : "no", "distinguished",
            d.distinguished);
    r.provenance["wdiv"] = "iterated division: f = f_low + Z^n U, quotient corrections H U^-1";
}

inline void series_endo(Report& r, const std::vector<std::string>& args, long p, const Options& o)
{
    if (args.empty()) throw InvalidInput("Series.endo_arguments", "expected apply R | compose R S | law R");
    const std::string& op = args[0];
    const SeriesRingSpec one(p, {}, {"T"}, o.degree_cap.value_or(16));
    auto need = [&](std::size_t k) {
        if (args.size() != k + 1) throw InvalidInput("Series.endo_arguments", op + " takes " + std::to_string(k) + " scalar(s)");
    };
    if (op == "apply") {
        need(1);
        const Rational a = Rational::parse(args[1]);
        const auto e = mult_endo(a, one);
        const auto back = endo_to_scalar(e);
        auto& t = r.table("endo", {"r", "series", "scalar"});
        t.rows.push_back({a.to_string(), e.to_string(), back ? back->to_string() : "none"});
        r.check("endo_scalar", back ? back->to_string() : "none", a.to_string(), back && *back == a);
    } else if (op == "compose") {
        need(2);
        const Rational a = Rational::parse(args[1]), b = Rational::parse(args[2]);
        const auto c = compose(mult_endo(a, one), {mult_endo(b, one)}, one);
        const auto back = endo_to_scalar(c);
        auto& t = r.table("endo", {"r", "s", "composite", "scalar"});
        t.rows.push_back({a.to_string(), b.to_string(), c.to_string(), back ? back->to_string() : "none"});
        r.check("endo_compose", back ? back->to_string() : "none", (a * b).to_string(), back && *back == a * b);
    } else if (op == "law") {
        need(1);
        const Rational a = Rational::parse(args[1]);
        const SeriesRingSpec two(p, {}, {"TX", "TY"}, one.degree_cap);
        const auto law = multiplicative_law(two);
        const auto e = mult_endo(a, one);
        const auto lhs = compose(e, {law}, two);
        const auto rhs = compose(law, {compose(e, {MixedSeries::variable(two, "TX")}, two),
                                       compose(e, {MixedSeries::variable(two, "TY")}, two)},
                                 two);
        auto& t = r.table("endo", {"r", "law", "homomorphism"});
        t.rows.push_back({a.to_string(), law.to_string(), lhs == rhs});
        r.check("formal_group_homomorphism", lhs == rhs ? "[r](F)" : lhs.to_string(),
                lhs == rhs ? "F([r], [r])" : rhs.to_string(), lhs == rhs);
    } else {
        throw InvalidInput("Series.endo_arguments", "unknown endo operation '" + op + "'");
    }
    r.provenance["endo"] = "[r](T) = sum over k >= 1 of binom(r, k) T^k";
}

inline void series_dilate(Report& r, const std::string& f_text, unsigned n, long p, const Options& o)
{
    const auto ring = ring_for({f_text}, p, o);
    const auto f = parse_series(f_text, ring);
    auto& t = r.table("dilate", {"expression", "n", "member"});
    for (unsigned m = 0; m <= n; ++m) t.rows.push_back({f.to_string(), m, dilatation_member(f, m)});
    r.provenance["dilate"] = "coefficient of S^m needs v_p >= -floor(|m| / (n + 1))";
}

inline void series_scenario(Report& r, const Scenario& s, const Options& o)
{
    Options so = o;
    so.degree_cap = s.degree_cap;
    for (const auto& q : s.series) {
        if (q.op == "gauss") series_gauss(r, q.f, s.p, so);
        if (q.op == "wdiv") series_wdiv(r, q.g, q.f, q.var, s.p, so);
        if (q.op == "endo") series_endo(r, {"apply", q.r.to_string()}, s.p, so);
        if (q.op == "endo_compose") series_endo(r, {"compose", q.r.to_string(), q.s.to_string()}, s.p, so);
        if (q.op == "dilate") series_dilate(r, q.f, q.n, s.p, so);
    }
}

// ---- entry point ----

inline int report_error(const std::string& kind, const std::string& invariant, const std::string& message,
                        const std::string& command, const Options& o, std::ostream& out, std::ostream& err, int code)
{
    if (o.json) {
        ojson e{{"tool_version", RAMCOND_VERSION},
                {"command", command},
                {"error", {{"kind", kind}, {"invariant", invariant}, {"message", message}}}};
        out << e.dump(2) << "\n";
    }
    err << "error (" << kind << (invariant.empty() ? "" : ", " + invariant) << "): " << message << "\n";
    return code;
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Conductors of character modules from ramification data", "conductor_cli"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    unsigned cap = 0;
    app.add_flag("--json", o.json, "Emit a JSON report");
    app.add_flag("--csv", o.csv, "Emit report tables as CSV");
    app.add_option("--decimal-digits", o.digits, "Digits in decimal approximations")->check(CLI::Range(0, 15));
    app.add_option("--degree-cap", cap, "Total-degree cap for power series")->check(CLI::Range(1, 64));
    app.add_flag_function("--version", [&](std::int64_t) { throw CLI::CallForVersion(RAMCOND_VERSION, 0); },
                          "Print the version");

    std::string path;
    auto* bisect = app.add_subcommand("bisect", "Tables of i_Gamma, a_Gamma and bA_Gamma");
    bisect->add_option("scenario", path, "Scenario file")->required();
    auto* conduct = app.add_subcommand("conduct", "Conductors of the scenario's modules");
    conduct->add_option("scenario", path, "Scenario file")->required();
    auto* weil = app.add_subcommand("weil", "Induction formula for Weil restrictions");
    weil->add_option("scenario", path, "Scenario file")->required();

    VerifyRequest vr;
    std::vector<std::string> random_args;
    auto* verify = app.add_subcommand("verify", "Run the invariant suites");
    verify->add_flag("--catalog", vr.catalog, "Built-in fixtures");
    verify->add_option("--random", random_args, "SEED N: randomized ramification data")->expected(2);
    verify->add_option("scenario", path, "Scenario file to check");

    long p = 2;
    std::string var = "Z";
    std::vector<std::string> sargs;
    auto* series = app.add_subcommand("series", "Power-series operations");
    series->require_subcommand(1);
    auto* gauss = series->add_subcommand("gauss", "Gauss valuation of an expression");
    gauss->add_option("expression", sargs, "Series expression")->required()->expected(1);
    gauss->add_option("--p", p, "Prime")->check(CLI::PositiveNumber);
    auto* wdiv = series->add_subcommand("wdiv", "Weierstrass division g = q f + r");
    wdiv->add_option("operands", sargs, "G F")->required()->expected(2);
    wdiv->add_option("--p", p, "Prime")->check(CLI::PositiveNumber);
    wdiv->add_option("--var", var, "Division variable");
    auto* endo = series->add_subcommand("endo", "Multiplication endomorphisms of the formal group");
    endo->add_option("arguments", sargs, "apply R | compose R S | law R")->required()->expected(1, 3);
    endo->add_option("--p", p, "Prime")->check(CLI::PositiveNumber);
    auto* dilate = series->add_subcommand("dilate", "Membership in the dilatation lattices up to N");
    dilate->add_option("operands", sargs, "F N")->required()->expected(2);
    dilate->add_option("--p", p, "Prime")->check(CLI::PositiveNumber);
    auto* srun = series->add_subcommand("run", "Series requests of a scenario");
    srun->add_option("scenario", path, "Scenario file")->required();

    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(e.what()) + "\n" : app.help());
            return ok;
        }
        return report_error("usage", "", e.what(), "", o, out, err, invalid_input);
    }
    if (cap) o.degree_cap = cap;
    if (o.json && o.csv) return report_error("usage", "", "--json and --csv are exclusive", "", o, out, err, invalid_input);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        Report r;
        if (bisect->parsed()) r = cmd_bisect(load(path, o), o);
        if (conduct->parsed()) r = cmd_conduct(load(path, o), o);
        if (weil->parsed()) r = cmd_weil(load(path, o), o);
        if (verify->parsed()) {
            if (!random_args.empty()) {
                auto num = [](const std::string& s, const char* what) {
                    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19)
                        throw InvalidInput("Verify.arguments", std::string(what) + " must be a non-negative integer");
                    return std::stoull(s);
                };
                vr.random = {num(random_args[0], "SEED"), num(random_args[1], "N")};
                if (vr.random->second > 100000) throw InvalidInput("Verify.arguments", "N is limited to 100000");
            }
            if (!path.empty()) vr.scenario = path;
            r = cmd_verify(vr, o);
        }
        if (series->parsed()) {
            const std::string sub = series->get_subcommands().front()->get_name();
            command = "series " + sub;
            r.command = command;
            if (sub != "run" && !is_prime(p)) throw InvalidInput("SeriesRing.prime", std::to_string(p) + " is not prime");
            if (sub == "gauss") series_gauss(r, sargs[0], p, o);
            if (sub == "wdiv") series_wdiv(r, sargs[0], sargs[1], var, p, o);
            if (sub == "endo") series_endo(r, sargs, p, o);
            if (sub == "dilate") {
                const auto& n = sargs[1];
                if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || n.size() > 4)
                    throw InvalidInput("Series.dilate_level", "N must be a small non-negative integer");
                series_dilate(r, sargs[0], static_cast<unsigned>(std::stoul(n)), p, o);
            }
            if (sub == "run") {
                const Scenario s = load(path, o);
                r.scenario = s;
                series_scenario(r, s, o);
            }
        }
        render(r, o, out);
        return r.exit_code();
    } catch (const InvalidInput& e) {
        const std::string what = e.what();
        return report_error("invalid_input", e.invariant(), what.substr(std::min(what.size(), e.invariant().size() + 2)),
                            command, o, out, err, invalid_input);
    } catch (const DomainError& e) {
        return report_error("invalid_input", "", e.what(), command, o, out, err, invalid_input);
    } catch (const AssertionFailure& e) {
        return report_error("assertion", "", e.what(), command, o, out, err, check_failed);
    }
}

} // namespace ramcond::cli
