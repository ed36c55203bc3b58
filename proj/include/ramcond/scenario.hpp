#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ramcond/catalog.hpp"
#include "ramcond/concordant.hpp"
#include "ramcond/series_parse.hpp"

namespace ramcond {

using json = nlohmann::json;

// A named character module: "regular", "trivial:d", or matrices for a
// generating set of elements.
struct ModuleSpec {
    std::string name;
    std::string kind; // "regular" | "trivial" | "generators"
    std::size_t rank = 0;
    std::vector<std::pair<ElementId, QMatrix>> generators;
};

struct WeilRequest {
    std::string module;
    std::vector<ElementId> subgroup;
};

struct SeriesRequest {
    std::string op; // gauss | wdiv | endo | endo_compose | dilate
    std::string f, g, var;
    Rational r, s;
    unsigned n = 0;
};

struct Scenario {
    std::string name;
    long p = 2;
    json group;
    std::vector<std::vector<ElementId>> filtration;
    RamData::OmegaSpec omega = RamData::OmegaCosetMap{{0, 0}};
    std::vector<ModuleSpec> modules;
    std::vector<WeilRequest> weil;
    std::vector<SeriesRequest> series;
    unsigned degree_cap = 16;
    unsigned lattice_precision = 8;

    FiniteGroup build_group() const;
    RamData ramdata() const;
    const ModuleSpec& module_spec(const std::string& module_name) const;
    CharModule module(const ModuleSpec& spec) const;
    CharModule module_on(const ModuleSpec& spec, const Subgroup& h) const;
    Subgroup subgroup(const std::vector<ElementId>& ids) const;
};

namespace scenario_detail {

[[noreturn]] inline void fail(const std::string& invariant, const std::string& what)
{
    throw InvalidInput("Scenario." + invariant, what);
}

inline void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object()) fail("type", where + ": expected an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) fail("unknown_key", where + ": unknown key '" + k + "'");
}

inline const json& required(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key)) fail("missing_key", where + ": missing key '" + key + "'");
    return obj.at(key);
}

inline long integer(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) fail("type", where + ": expected an integer");
    return v.get<long>();
}

inline std::size_t natural(const json& v, const std::string& where)
{
    const long x = integer(v, where);
    if (x < 0) fail("type", where + ": expected a non-negative integer");
    return static_cast<std::size_t>(x);
}

inline std::string string(const json& v, const std::string& where)
{
    if (!v.is_string()) fail("type", where + ": expected a string");
    return v.get<std::string>();
}

inline Rational rational(const json& v, const std::string& where)
{
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (!v.is_string()) fail("rational", where + ": rationals must be strings such as \"-1/3\"");
    return Rational::parse(v.get<std::string>());
}

inline std::vector<ElementId> id_list(const json& v, const std::string& where)
{
    if (!v.is_array()) fail("type", where + ": expected a list of element ids");
    std::vector<ElementId> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(natural(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline QMatrix matrix(const json& v, const std::string& where)
{
    if (!v.is_array() || v.empty()) fail("type", where + ": expected a non-empty list of rows");
    const std::size_t d = v.size();
    QMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!v[i].is_array() || v[i].size() != d) fail("matrix_shape", where + ": matrix must be square");
        for (std::size_t j = 0; j < d; ++j)
            m(i, j) = rational(v[i][j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

inline json matrix_json(const QMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

inline FiniteGroup named_group(const std::string& n)
{
    if (n == "S3") return groups::symmetric3();
    if (n == "A4") return groups::alternating4();
    if (n == "V4") return groups::klein4();
    if (n == "Q8") return groups::quaternion8();
    if (n == "Dic12") return groups::dicyclic12();
    if (n == "SL2F3") return groups::sl2_f3();
    if (n.size() > 1 && n[0] == 'D' && n.find_first_not_of("0123456789", 1) == std::string::npos) {
        const auto k = std::stoul(n.substr(1));
        if (k >= 1 && k <= 64) return groups::dihedral(k);
    }
    fail("group", "unknown named group '" + n + "'");
}

// Validates a group spec and returns it in canonical form.
inline json group_spec(const json& v, const std::string& where, GroupSpec* out = nullptr)
{
    only_keys(v, {"cyclic", "product", "table", "named"}, where);
    if (v.size() != 1) fail("group", where + ": exactly one of cyclic, product, table, named");
    if (v.contains("cyclic")) {
        const auto n = natural(v.at("cyclic"), where + ".cyclic");
        if (n < 1 || n > 4096) fail("group", where + ".cyclic: order must lie in [1, 4096]");
        if (out) out->spec = GroupSpec::Cyclic{n};
        return json{{"cyclic", n}};
    }
    if (v.contains("product")) {
        const auto& f = v.at("product");
        if (!f.is_array() || f.empty()) fail("group", where + ".product: expected a non-empty list");
        json canon = json::array();
        GroupSpec::Product prod;
        for (std::size_t i = 0; i < f.size(); ++i) {
            GroupSpec sub;
            canon.push_back(group_spec(f[i], where + ".product[" + std::to_string(i) + "]", &sub));
            prod.factors.push_back(std::move(sub));
        }
        if (out) out->spec = std::move(prod);
        return json{{"product", canon}};
    }
    if (v.contains("named")) {
        const auto n = string(v.at("named"), where + ".named");
        named_group(n);
        if (out) out->spec = GroupSpec::Table{};
        return json{{"named", n}};
    }
    const auto& t = v.at("table");
    if (!t.is_array() || t.empty()) fail("group", where + ".table: expected a non-empty list of rows");
    std::vector<std::vector<ElementId>> table;
    for (std::size_t i = 0; i < t.size(); ++i) table.push_back(id_list(t[i], where + ".table[" + std::to_string(i) + "]"));
    if (out) out->spec = GroupSpec::Table{table};
    return json{{"table", table}};
}

inline FiniteGroup build_group(const json& canon)
{
    if (canon.contains("named")) return named_group(canon.at("named").get<std::string>());
    if (canon.contains("product")) {
        FiniteGroup g = build_group(canon.at("product")[0]);
        for (std::size_t i = 1; i < canon.at("product").size(); ++i)
            g = FiniteGroup::product(g, build_group(canon.at("product")[i]));
        return g;
    }
    GroupSpec spec;
    group_spec(canon, "group", &spec);
    return make_group(spec);
}

inline ModuleSpec module_spec(const json& v, const std::string& where)
{
    only_keys(v, {"name", "spec", "rank", "generators"}, where);
    ModuleSpec m;
    m.name = string(required(v, "name", where), where + ".name");
    if (m.name.empty()) fail("module", where + ": module name must be non-empty");
    if (v.contains("spec") == v.contains("generators"))
        fail("module", where + ": give exactly one of 'spec' and 'generators'");
    if (v.contains("spec")) {
        if (v.contains("rank")) fail("module", where + ": 'rank' is only used with 'generators'");
        const auto s = string(v.at("spec"), where + ".spec");
        if (s == "regular") {
            m.kind = "regular";
        } else if (s.rfind("trivial:", 0) == 0 && s.size() > 8 &&
                   s.find_first_not_of("0123456789", 8) == std::string::npos && s.size() < 14) {
            m.kind = "trivial";
            m.rank = std::stoul(s.substr(8));
        } else {
            fail("module", where + ".spec: expected \"regular\" or \"trivial:d\", got '" + s + "'");
        }
        return m;
    }
    m.kind = "generators";
    const auto& gens = v.at("generators");
    if (!gens.is_array()) fail("type", where + ".generators: expected a list");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string w = where + ".generators[" + std::to_string(i) + "]";
        only_keys(gens[i], {"element", "matrix"}, w);
        m.generators.emplace_back(natural(required(gens[i], "element", w), w + ".element"),
                                  matrix(required(gens[i], "matrix", w), w + ".matrix"));
    }
    if (m.generators.empty()) {
        m.rank = natural(required(v, "rank", where), where + ".rank");
    } else {
        m.rank = m.generators.front().second.rows();
        if (v.contains("rank") && natural(v.at("rank"), where + ".rank") != m.rank)
            fail("module", where + ": rank disagrees with the generator matrices");
    }
    return m;
}

inline json module_json(const ModuleSpec& m)
{
    if (m.kind == "regular") return json{{"name", m.name}, {"spec", "regular"}};
    if (m.kind == "trivial") return json{{"name", m.name}, {"spec", "trivial:" + std::to_string(m.rank)}};
    json gens = json::array();
    for (const auto& [e, mat] : m.generators) gens.push_back(json{{"element", e}, {"matrix", matrix_json(mat)}});
    json out{{"name", m.name}, {"generators", gens}};
    if (m.generators.empty()) out["rank"] = m.rank;
    return out;
}

inline SeriesRequest series_request(const json& v, const std::string& where)
{
    SeriesRequest r;
    r.op = string(required(v, "op", where), where + ".op");
    if (r.op == "gauss") {
        only_keys(v, {"op", "f"}, where);
        r.f = string(required(v, "f", where), where + ".f");
    } else if (r.op == "wdiv") {
        only_keys(v, {"op", "f", "g", "var"}, where);
        r.g = string(required(v, "g", where), where + ".g");
        r.f = string(required(v, "f", where), where + ".f");
        r.var = v.contains("var") ? string(v.at("var"), where + ".var") : "Z";
    } else if (r.op == "endo") {
        only_keys(v, {"op", "r"}, where);
        r.r = rational(required(v, "r", where), where + ".r");
    } else if (r.op == "endo_compose") {
        only_keys(v, {"op", "r", "s"}, where);
        r.r = rational(required(v, "r", where), where + ".r");
        r.s = rational(required(v, "s", where), where + ".s");
    } else if (r.op == "dilate") {
        only_keys(v, {"op", "f", "n"}, where);
        r.f = string(required(v, "f", where), where + ".f");
        r.n = static_cast<unsigned>(natural(required(v, "n", where), where + ".n"));
    } else {
        fail("series_op", where + ".op: unknown series operation '" + r.op + "'");
    }
    return r;
}

inline json series_json(const SeriesRequest& r)
{
    json out{{"op", r.op}};
    if (r.op == "gauss") out["f"] = r.f;
    if (r.op == "wdiv") {
        out["g"] = r.g;
        out["f"] = r.f;
        out["var"] = r.var;
    }
    if (r.op == "endo" || r.op == "endo_compose") out["r"] = r.r.to_string();
    if (r.op == "endo_compose") out["s"] = r.s.to_string();
    if (r.op == "dilate") {
        out["f"] = r.f;
        out["n"] = r.n;
    }
    return out;
}

} // namespace scenario_detail

inline Scenario parse_scenario(const json& doc)
{
    using namespace scenario_detail;
    only_keys(doc, {"name", "p", "group", "filtration", "omega", "modules", "weil", "series", "precision"}, "scenario");
    Scenario s;
    if (doc.contains("name")) s.name = string(doc.at("name"), "name");
    s.p = integer(required(doc, "p", "scenario"), "p");
    if (!is_prime(s.p)) throw InvalidInput("RamData.prime", std::to_string(s.p) + " is not prime");
    s.group = group_spec(required(doc, "group", "scenario"), "group");
    if (doc.contains("filtration")) {
        const auto& f = doc.at("filtration");
        if (!f.is_array()) fail("type", "filtration: expected a list of subgroups");
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto ids = id_list(f[i], "filtration[" + std::to_string(i) + "]");
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            s.filtration.push_back(std::move(ids));
        }
    }
    if (doc.contains("omega")) {
        const auto& o = doc.at("omega");
        only_keys(o, {"generator", "exponent", "cosets"}, "omega");
        if (o.contains("cosets")) {
            if (o.contains("generator") || o.contains("exponent"))
                fail("omega", "omega: give either generator/exponent or cosets");
            const auto& c = o.at("cosets");
            if (!c.is_array()) fail("type", "omega.cosets: expected a list of [element, exponent] pairs");
            RamData::OmegaCosetMap map;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const std::string w = "omega.cosets[" + std::to_string(i) + "]";
                if (!c[i].is_array() || c[i].size() != 2) fail("type", w + ": expected [element, exponent]");
                map.emplace_back(natural(c[i][0], w), integer(c[i][1], w));
            }
            s.omega = std::move(map);
        } else {
            s.omega = RamData::OmegaByGenerator{natural(required(o, "generator", "omega"), "omega.generator"),
                                                integer(required(o, "exponent", "omega"), "omega.exponent")};
        }
    }
    if (doc.contains("modules")) {
        const auto& m = doc.at("modules");
        if (!m.is_array()) fail("type", "modules: expected a list");
        std::set<std::string> names;
        for (std::size_t i = 0; i < m.size(); ++i) {
            s.modules.push_back(module_spec(m[i], "modules[" + std::to_string(i) + "]"));
            if (!names.insert(s.modules.back().name).second)
                fail("module", "modules: duplicate name '" + s.modules.back().name + "'");
        }
    }
    if (doc.contains("weil")) {
        const auto& w = doc.at("weil");
        if (!w.is_array()) fail("type", "weil: expected a list");
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::string where = "weil[" + std::to_string(i) + "]";
            only_keys(w[i], {"module", "subgroup"}, where);
            WeilRequest r{string(required(w[i], "module", where), where + ".module"),
                          id_list(required(w[i], "subgroup", where), where + ".subgroup")};
            std::sort(r.subgroup.begin(), r.subgroup.end());
            r.subgroup.erase(std::unique(r.subgroup.begin(), r.subgroup.end()), r.subgroup.end());
            s.weil.push_back(std::move(r));
        }
    }
    if (doc.contains("series")) {
        const auto& q = doc.at("series");
        if (!q.is_array()) fail("type", "series: expected a list");
        for (std::size_t i = 0; i < q.size(); ++i)
            s.series.push_back(series_request(q[i], "series[" + std::to_string(i) + "]"));
    }
    if (doc.contains("precision")) {
        const auto& pr = doc.at("precision");
        only_keys(pr, {"degree_cap", "lattice"}, "precision");
        if (pr.contains("degree_cap")) s.degree_cap = static_cast<unsigned>(natural(pr.at("degree_cap"), "precision.degree_cap"));
        if (pr.contains("lattice")) s.lattice_precision = static_cast<unsigned>(natural(pr.at("lattice"), "precision.lattice"));
        if (s.degree_cap < 1 || s.degree_cap > 64) fail("precision", "precision.degree_cap must lie in [1, 64]");
        if (s.lattice_precision < 1 || s.lattice_precision > 64) fail("precision", "precision.lattice must lie in [1, 64]");
    }

    // Semantic validation: group, filtration, ω, modules, weil references.
    const RamData rd = s.ramdata();
    for (const auto& m : s.modules) s.module(m);
    for (const auto& w : s.weil) s.module_on(s.module_spec(w.module), s.subgroup(w.subgroup));
    for (const auto& r : s.series) {
        if (!r.f.empty()) series_variables({r.f});
        if (!r.g.empty()) series_variables({r.g});
    }
    (void)rd;
    return s;
}

inline Scenario parse_scenario_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput("Scenario.json", e.what());
    }
    return parse_scenario(doc);
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("Scenario.file", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

// Canonical form: re-parsing it yields the same scenario.
inline json scenario_json(const Scenario& s)
{
    using namespace scenario_detail;
    json out{{"p", s.p}, {"group", s.group}, {"filtration", s.filtration}};
    if (!s.name.empty()) out["name"] = s.name;
    if (const auto* g = std::get_if<RamData::OmegaByGenerator>(&s.omega))
        out["omega"] = json{{"generator", g->generator}, {"exponent", g->exponent}};
    else {
        json c = json::array();
        for (const auto& [e, x] : std::get<RamData::OmegaCosetMap>(s.omega)) c.push_back(json::array({e, x}));
        out["omega"] = json{{"cosets", c}};
    }
    json mods = json::array();
    for (const auto& m : s.modules) mods.push_back(module_json(m));
    out["modules"] = mods;
    json weil = json::array();
    for (const auto& w : s.weil) weil.push_back(json{{"module", w.module}, {"subgroup", w.subgroup}});
    out["weil"] = weil;
    json series = json::array();
    for (const auto& r : s.series) series.push_back(series_json(r));
    out["series"] = series;
    out["precision"] = json{{"degree_cap", s.degree_cap}, {"lattice", s.lattice_precision}};
    return out;
}

// FNV-1a 64 of the canonical JSON text, as 16 hex digits.
inline std::string scenario_digest(const Scenario& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : scenario_json(s).dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline FiniteGroup Scenario::build_group() const { return scenario_detail::build_group(group); }

inline RamData Scenario::ramdata() const
{
    const FiniteGroup g = build_group();
    std::vector<Subgroup> chain;
    for (const auto& ids : filtration) chain.emplace_back(g, ids);
    return RamData(g, p, std::move(chain), omega);
}

inline const ModuleSpec& Scenario::module_spec(const std::string& module_name) const
{
    for (const auto& m : modules)
        if (m.name == module_name) return m;
    throw InvalidInput("Scenario.module_reference", "no module named '" + module_name + "'");
}

inline Subgroup Scenario::subgroup(const std::vector<ElementId>& ids) const { return Subgroup(build_group(), ids); }

namespace scenario_detail {

inline CharModule instantiate(const ModuleSpec& m, const FiniteGroup& g, long p,
                              const std::vector<std::pair<ElementId, QMatrix>>& gens)
{
    if (m.kind == "regular") return CharModule::regular(g, p, m.name);
    if (m.kind == "trivial") return CharModule::trivial(g, p, m.rank, m.name);
    return CharModule::from_generators(m.name, g, p, m.rank, gens);
}

} // namespace scenario_detail

inline CharModule Scenario::module(const ModuleSpec& spec) const
{
    return scenario_detail::instantiate(spec, build_group(), p, spec.generators);
}

// "regular" and "trivial:d" are rebuilt on H; generator modules are built on
// H when every generator lies in H and restricted from Γ otherwise.
inline CharModule Scenario::module_on(const ModuleSpec& spec, const Subgroup& h) const
{
    const bool inside = std::all_of(spec.generators.begin(), spec.generators.end(),
                                    [&](const auto& gm) { return h.contains(gm.first); });
    if (spec.kind != "generators" || inside) {
        std::vector<std::pair<ElementId, QMatrix>> local;
        for (const auto& [e, m] : spec.generators) local.emplace_back(h.local_id(e), m);
        return scenario_detail::instantiate(spec, h.as_group(), p, local);
    }
    const CharModule full = module(spec);
    std::vector<QMatrix> act;
    for (auto e : h.elements()) act.push_back(full.rho(e));
    return CharModule(spec.name, h.as_group(), p, std::move(act));
}

} // namespace ramcond
