#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ramcond/catalog.hpp"
#include "ramcond/concordant.hpp"
#include "ramcond/series.hpp"

namespace ramcond {

struct Check {
    std::string name;
    bool pass = false;
    std::string lhs;
    std::string rhs;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;

    std::size_t passed() const
    {
        std::size_t k = 0;
        for (const auto& c : checks) k += c.pass;
        return k;
    }
    std::size_t failed() const { return checks.size() - passed(); }
    bool ok() const { return failed() == 0; }

    void expect(std::string name, const std::string& lhs, const std::string& rhs, bool pass)
    {
        checks.push_back({std::move(name), pass, lhs, rhs});
    }

    // Runs `body`; a thrown library error is recorded as a failing check.
    void guard(const std::string& name, const std::function<void()>& body)
    {
        try {
            body();
        } catch (const std::exception& e) {
            checks.push_back({name, false, "exception", e.what()});
        }
    }
};

inline std::string to_string(const ClassFunction& f)
{
    std::string s = "[";
    for (std::size_t i = 0; i < f.values().size(); ++i) s += (i ? ", " : "") + f.values()[i].to_string();
    return s + "]";
}

// Small deterministic random source shared by the suites.
class SuiteRng {
public:
    explicit SuiteRng(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t below(std::uint64_t n) { return rng_() % n; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
    bool coin() { return below(2) == 0; }

private:
    std::mt19937_64 rng_;
};

namespace suites {

// Class function on g with integer-combination values in Q(ζ_level).
inline ClassFunction random_class_function(const FiniteGroup& g, SuiteRng& rng, unsigned level)
{
    std::vector<CycloNum> v(g.order());
    for (const auto& cls : g.conjugacy_classes()) {
        std::vector<Rational> c(euler_phi(level));
        for (auto& x : c) x = Rational(Integer(rng.range(-4, 4)), Integer(rng.range(1, 3)));
        const CycloNum val = CycloNum::from_powers(level, c);
        for (auto s : cls) v[s] = val;
    }
    return ClassFunction(g, v);
}

inline void bisection_case(SuiteResult& out, const RamData& rd, const std::string& id)
{
    out.guard("bisection/" + id, [&] {
        const auto b = bisection(rd);
        const auto a = artin_character(rd);
        const auto sum = b + conjugate(b);
        out.expect("bisection/" + id, to_string(sum), to_string(a), sum == a);
        CycloNum total(0);
        for (const auto& v : a.values()) total += v;
        out.expect("artin_sum_zero/" + id, total.to_string(), "0", total == CycloNum(0));
        const CycloNum half_disc(Rational(Integer(disc_valuation(rd, Subgroup::trivial(rd.group()))), Integer(2)));
        out.expect("identity_value/" + id, b(0).to_string(), half_disc.to_string(), b(0) == half_disc);
        bool class_invariant = true;
        for (const auto& cls : rd.group().conjugacy_classes())
            for (auto s : cls)
                if (s && i_gamma(rd, s) != i_gamma(rd, cls.front())) class_invariant = false;
        out.expect("i_gamma_class_invariant/" + id, class_invariant ? "invariant" : "varies", "invariant",
                   class_invariant);
    });
}

inline SuiteResult bisection(const std::vector<Fixture>& fixtures)
{
    SuiteResult out{"bisection", {}};
    for (const auto& fx : fixtures) bisection_case(out, fx.rd, fx.id);
    return out;
}

inline SuiteResult bisection_random(std::uint64_t seed, std::size_t count)
{
    SuiteResult out{"bisection_random", {}};
    RandomRamData gen(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::string id = "random#" + std::to_string(i);
        try {
            const RamData rd = gen.next();
            id += "(|G|=" + std::to_string(rd.group().order()) + ",p=" + std::to_string(rd.prime()) +
                  ",chain=" + std::to_string(rd.wild_chain().size()) + ")";
            bisection_case(out, rd, id);
        } catch (const std::exception& e) {
            out.checks.push_back({"generate/" + id, false, "exception", e.what()});
        }
    }
    return out;
}

inline SuiteResult frobenius(const std::vector<Fixture>& fixtures, std::uint64_t seed)
{
    SuiteResult out{"frobenius", {}};
    SuiteRng rng(seed);
    for (const auto& fx : fixtures) {
        const auto& g = fx.rd.group();
        for (const auto& h : all_subgroups(g)) {
            const std::string id = fx.id + "/H" + std::to_string(h.order()) + "[" + std::to_string(h.elements().back()) + "]";
            out.guard("frobenius/" + id, [&] {
                const auto f = random_class_function(h.as_group(), rng, 4);
                const auto chi = random_class_function(g, rng, 3);
                const CycloNum lhs = pair(induce(f, h), chi), rhs = pair(f, restrict(chi, h));
                out.expect("frobenius/" + id, lhs.to_string(), rhs.to_string(), lhs == rhs);
                const auto b = bisection(fx.rd);
                const CycloNum sym_l = pair(chi, b), sym_r = pair(b, chi);
                out.expect("pair_symmetry/" + id, sym_l.to_string(), sym_r.to_string(), sym_l == sym_r);
            });
        }
    }
    return out;
}

inline SuiteResult restriction(const std::vector<Fixture>& fixtures)
{
    SuiteResult out{"restriction_identity", {}};
    const Rational half(Integer(1), Integer(2));
    for (const auto& fx : fixtures)
        for (const auto& h : all_subgroups(fx.rd.group())) {
            const std::string id = fx.id + "/H" + std::to_string(h.order()) + "[" + std::to_string(h.elements().back()) + "]";
            out.guard("restriction/" + id, [&] {
                const auto lhs = restrict(bisection(fx.rd), h);
                const auto rhs = bisection(restrict_ramdata(fx.rd, h)) +
                                 CycloNum(half * Rational(disc_valuation(fx.rd, h))) *
                                     ClassFunction::regular(h.as_group());
                out.expect("restriction/" + id, to_string(lhs), to_string(rhs), lhs == rhs);
            });
        }
    return out;
}

inline SuiteResult induction(const std::vector<Fixture>& fixtures)
{
    SuiteResult out{"induction_consistency", {}};
    const Rational half(Integer(1), Integer(2));
    for (const auto& fx : fixtures)
        for (const auto& h : all_subgroups(fx.rd.group())) {
            const long p = fx.rd.prime();
            const std::string id = fx.id + "/H" + std::to_string(h.order()) + "[" + std::to_string(h.elements().back()) + "]";
            for (const auto& m : {CharModule::trivial(h.as_group(), p, 1), CharModule::regular(h.as_group(), p)}) {
                const std::string name = "induction/" + id + "/" + m.name();
                out.guard(name, [&] {
                    const auto direct = conductor(weil_restriction(m, h), fx.rd);
                    const auto formula = conductor_via_induction(m, fx.rd, h);
                    out.expect(name, direct.value.to_string(), formula.value.to_string(), direct.value == formula.value);
                });
            }
            if (h.order() == 1) {
                out.guard("res_gm/" + id, [&] {
                    const auto direct = conductor(weil_restriction(CharModule::trivial(h.as_group(), p, 1), h), fx.rd);
                    const Rational expect = half * Rational(disc_valuation(fx.rd, h));
                    const auto over_l = conductor(CharModule::trivial(h.as_group(), p, 1), restrict_ramdata(fx.rd, h));
                    out.expect("res_gm/" + id, direct.value.to_string(), expect.to_string(),
                               direct.value == expect && over_l.value.is_zero());
                });
            }
        }
    return out;
}

// Integer representation assembled from permutation modules on cosets of
// random subgroups and sign-type modules induced from index-2 subgroups.
inline CharModule random_integer_module(const FiniteGroup& g, long p, SuiteRng& rng, std::size_t max_rank)
{
    const auto subs = all_subgroups(g);
    CharModule acc("zero", g, p, std::vector<QMatrix>(g.order(), QMatrix(0, 0)));
    const std::size_t blocks = 1 + rng.below(2);
    for (std::size_t b = 0; b < blocks; ++b) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            const Subgroup& h = subs[rng.below(subs.size())];
            std::optional<CharModule> piece;
            if (rng.coin()) {
                piece = weil_restriction(CharModule::trivial(h.as_group(), p, 1), h);
            } else {
                // sign character of H through an index-2 subgroup K ⊂ H, when one exists
                std::vector<const Subgroup*> ks;
                for (const auto& k : subs)
                    if (k.order() * 2 == h.order() && k.is_subset_of(h)) ks.push_back(&k);
                if (ks.empty()) continue;
                const Subgroup& k = *ks[rng.below(ks.size())];
                std::vector<QMatrix> act;
                for (auto s : h.elements()) act.push_back(QMatrix{{k.contains(s) ? 1 : -1}});
                piece = weil_restriction(CharModule("sign", h.as_group(), p, std::move(act)), h);
            }
            if (acc.rank() + piece->rank() > max_rank) continue;
            acc = acc.rank() ? direct_sum(acc, *piece) : piece->renamed(piece->name());
            break;
        }
    }
    if (acc.rank() == 0) acc = CharModule::trivial(g, p, 1);
    return acc;
}

// Random integer matrix with det a p-adic unit.
inline QMatrix random_p_unit_matrix(std::size_t d, long p, SuiteRng& rng)
{
    for (;;) {
        QMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) = Rational(rng.range(-3, 3));
        const Rational det = linalg::determinant(m);
        if (!det.is_zero() && p_valuation(det, p) == Valuation(0) && abs(det) != Rational(1)) return m;
    }
}

// Random product of elementary integer matrices (det ±1).
inline QMatrix random_unimodular(std::size_t d, SuiteRng& rng)
{
    QMatrix m = QMatrix::identity(d);
    if (d < 2) return rng.coin() ? m : Rational(-1) * m;
    for (int k = 0; k < 6; ++k) {
        const std::size_t i = rng.below(d);
        std::size_t j = rng.below(d - 1);
        if (j >= i) ++j;
        QMatrix e = QMatrix::identity(d);
        e(i, j) = Rational(rng.range(-2, 2));
        m = m * e;
    }
    return m;
}

inline CharModule conjugated(const CharModule& m, const QMatrix& b, std::string name)
{
    if (m.rank() == 0) return m.renamed(std::move(name));
    const QMatrix bi = linalg::inverse(b);
    std::vector<QMatrix> act;
    for (const auto& r : m.action()) act.push_back(bi * r * b);
    return CharModule(std::move(name), m.group(), m.prime(), std::move(act));
}

inline SuiteResult isogeny(const std::vector<Fixture>& fixtures, std::uint64_t seed, std::size_t count)
{
    SuiteResult out{"isogeny_invariance", {}};
    SuiteRng rng(seed);
    std::vector<const Fixture*> usable;
    for (const auto& fx : fixtures)
        if (fx.rd.group().order() > 1) usable.push_back(&fx);
    for (std::size_t i = 0; i < count; ++i) {
        const Fixture& fx = *usable[rng.below(usable.size())];
        const std::string id = std::to_string(i) + "/" + fx.id;
        out.guard("isogeny/" + id, [&] {
            const auto m = random_integer_module(fx.rd.group(), fx.rd.prime(), rng, 8);
            const auto m2 = conjugated(m, random_p_unit_matrix(m.rank(), fx.rd.prime(), rng), m.name() + "'");
            const bool iso = is_isogenous(m, m2);
            const auto c1 = conductor(m, fx.rd), c2 = conductor(m2, fx.rd);
            out.expect("isogeny/" + id + "/rank" + std::to_string(m.rank()), c1.value.to_string(),
                       c2.value.to_string(), iso && c1 == c2);
        });
    }
    return out;
}

inline SuiteResult conductor_properties(const std::vector<Fixture>& fixtures, std::uint64_t seed)
{
    SuiteResult out{"conductor_properties", {}};
    SuiteRng rng(seed);
    for (const auto& fx : fixtures) {
        out.guard("conductor/" + fx.id, [&] {
            const auto& g = fx.rd.group();
            const long p = fx.rd.prime();
            const auto a = random_integer_module(g, p, rng, 8);
            const auto b = random_integer_module(g, p, rng, 8);
            const auto ca = conductor(a, fx.rd), cb = conductor(b, fx.rd);
            const auto cs = conductor(direct_sum(a, b), fx.rd);
            out.expect("additivity/" + fx.id, cs.value.to_string(), (ca.value + cb.value).to_string(),
                       cs.value == ca.value + cb.value);
            const auto reg = conductor(CharModule::regular(g, p), fx.rd);
            const Rational half_disc(Integer(disc_valuation(fx.rd, Subgroup::trivial(g))), Integer(2));
            out.expect("regular/" + fx.id, reg.value.to_string(), half_disc.to_string(), reg.value == half_disc);
            const auto triv = conductor(CharModule::trivial(g, p, 5), fx.rd);
            out.expect("trivial/" + fx.id, triv.value.to_string(), "0", triv.value.is_zero());
        });
    }
    return out;
}

// ---- series laws ----

inline Rational random_coefficient(long p, SuiteRng& rng, long min_val, long max_val)
{
    long a = 0;
    while (a == 0 || a % p == 0) a = rng.range(-9, 9);
    long b = 0;
    while (b == 0 || b % p == 0) b = rng.range(1, 7);
    const long k = rng.range(min_val, max_val);
    return Rational(Integer(a), Integer(b)) * pow(Rational(p), k);
}

inline MixedSeries random_polynomial(const SeriesRingSpec& ring, SuiteRng& rng, unsigned max_degree, long min_val,
                                     long max_val, std::size_t max_terms = 6)
{
    MixedSeries f(ring);
    const std::size_t terms = 1 + rng.below(max_terms);
    for (std::size_t t = 0; t < terms; ++t) {
        Exponent e(ring.arity(), 0);
        const unsigned deg = static_cast<unsigned>(rng.below(max_degree + 1));
        for (unsigned k = 0; k < deg; ++k) ++e[rng.below(ring.arity())];
        f += MixedSeries::monomial(ring, e, random_coefficient(ring.p, rng, min_val, max_val));
    }
    return f;
}

inline std::vector<Rational> endo_scalars(long p)
{
    std::vector<Rational> out;
    for (long r = -3; r <= 3; ++r) out.emplace_back(r);
    if (p == 2) {
        out.emplace_back(Integer(1), Integer(3));
        out.emplace_back(Integer(-2), Integer(5));
    } else {
        out.emplace_back(Integer(1), Integer(2));
        out.emplace_back(Integer(5), Integer(4));
    }
    return out;
}

struct SeriesSuiteOptions {
    unsigned degree_cap = 16;
    std::size_t gauss_pairs = 100;
    std::size_t weierstrass_pairs = 50;
    std::size_t dilatation_cases = 100;
};

inline void gauss_laws(SuiteResult& out, long p, SuiteRng& rng, const SeriesSuiteOptions& o)
{
    const SeriesRingSpec ring(p, {"S"}, {"T"}, o.degree_cap);
    const std::string pp = "p=" + std::to_string(p);
    for (std::size_t i = 0; i < o.gauss_pairs; ++i) {
        const unsigned half = o.degree_cap / 2;
        MixedSeries f = random_polynomial(ring, rng, half, -3, 3), g = random_polynomial(ring, rng, half, -3, 3);
        const Valuation vf = gauss_valuation(f), vg = gauss_valuation(g), vfg = gauss_valuation(f * g);
        out.expect("gauss_multiplicative/" + pp + "/" + std::to_string(i), vfg.to_string(), (vf + vg).to_string(),
                   vfg == vf + vg);
        const Valuation vs = gauss_valuation(f + g);
        const bool ultra = vs >= min(vf, vg) && (vf == vg || vs == min(vf, vg));
        out.expect("ultrametric/" + pp + "/" + std::to_string(i), vs.to_string(), min(vf, vg).to_string(), ultra);
    }
    for (std::size_t i = 0; i < 20; ++i) {
        const MixedSeries f = random_polynomial(ring, rng, o.degree_cap / 5, -2, 2);
        for (unsigned k = 1; k <= 5; ++k) {
            const Valuation lhs = gauss_valuation(f.pow(k));
            Valuation rhs = Valuation(0);
            for (unsigned j = 0; j < k; ++j) rhs = rhs + gauss_valuation(f);
            out.expect("power_multiplicative/" + pp + "/" + std::to_string(i) + "^" + std::to_string(k),
                       lhs.to_string(), rhs.to_string(), lhs == rhs);
        }
    }
}

inline void endo_laws(SuiteResult& out, long p, const SeriesSuiteOptions& o)
{
    const SeriesRingSpec one(p, {}, {"T"}, o.degree_cap);
    const SeriesRingSpec two(p, {}, {"TX", "TY"}, o.degree_cap);
    const std::string pp = "p=" + std::to_string(p);
    const auto scalars = endo_scalars(p);
    for (const auto& r : scalars)
        for (const auto& s : scalars) {
            const std::string name = "endo_compose/" + pp + "/" + r.to_string() + "∘" + s.to_string();
            out.guard(name, [&] {
                const auto lhs = compose(mult_endo(r, one), {mult_endo(s, one)}, one);
                const auto rhs = mult_endo(r * s, one);
                out.expect(name, lhs.to_string(), rhs.to_string(), lhs == rhs);
                const auto back = endo_to_scalar(lhs);
                out.expect("endo_scalar/" + pp + "/" + r.to_string() + "∘" + s.to_string(),
                           back ? back->to_string() : "none", (r * s).to_string(), back && *back == r * s);
            });
        }
    std::vector<Rational> law_scalars{Rational(2), Rational(-1), Rational(3)};
    law_scalars.push_back(scalars.back());
    for (const auto& r : law_scalars) {
        const std::string name = "formal_group_hom/" + pp + "/[" + r.to_string() + "]";
        out.guard(name, [&] {
            const auto law = multiplicative_law(two);
            const auto x = MixedSeries::variable(two, "TX"), y = MixedSeries::variable(two, "TY");
            const auto endo = mult_endo(r, one);
            const auto lhs = compose(endo, {law}, two);
            const auto rhs = compose(law, {compose(endo, {x}, two), compose(endo, {y}, two)}, two);
            out.expect(name, lhs == rhs ? "[r]∘F" : lhs.to_string(), lhs == rhs ? "[r]∘F" : rhs.to_string(),
                       lhs == rhs);
        });
    }
}

// Checks q·f + r = g on the window (exactly, or up to p^precision) and
// deg_z r < n, then divides q·f + r again.
inline void weierstrass_case(SuiteResult& out, const std::string& name, const MixedSeries& g, const MixedSeries& f,
                             const std::string& z)
{
    out.guard(name, [&] {
        const auto res = weierstrass_divide(g, f, z);
        const auto zi = *g.ring().index_of(z);
        bool low_degree = true;
        for (const auto& [e, c] : res.remainder.terms())
            if (e[zi] >= res.residual_order) low_degree = false;
        out.expect(name + "/deg_r", low_degree ? "<n" : res.remainder.to_string(), "<n", low_degree);
        const auto recon = res.quotient * f + res.remainder;
        const Valuation err = gauss_valuation(recon - g);
        const bool ok = res.exact ? recon == g : err >= Valuation(res.precision);
        out.expect(name + "/reconstruct", res.exact ? recon.to_string() : "ν(err)=" + err.to_string(),
                   res.exact ? g.to_string() : "≥" + std::to_string(res.precision), ok);
        const auto again = weierstrass_divide(recon, f, z);
        const Valuation dq = gauss_valuation(again.quotient - res.quotient),
                        dr = gauss_valuation(again.remainder - res.remainder);
        const bool same = res.exact && again.exact
                              ? again.quotient == res.quotient && again.remainder == res.remainder
                              : dq >= Valuation(res.precision) && dr >= Valuation(res.precision);
        out.expect(name + "/redivide", "Δq ν=" + dq.to_string() + " Δr ν=" + dr.to_string(),
                   res.exact ? "inf" : "≥" + std::to_string(res.precision), same);
    });
}

inline void weierstrass_laws(SuiteResult& out, long p, SuiteRng& rng, const SeriesSuiteOptions& o)
{
    const std::string pp = "p=" + std::to_string(p);
    {
        const SeriesRingSpec r1(p, {"Z"}, {}, o.degree_cap);
        const auto zz = MixedSeries::variable(r1, "Z");
        const auto f = zz.pow(2) - MixedSeries::constant(r1, Rational(2));
        if (p == 2) {
            const auto res = weierstrass_divide(zz.pow(3), f, "Z");
            out.expect("weierstrass_oracle/Z^3÷(Z^2-2)", "q=" + res.quotient.to_string() + " r=" + res.remainder.to_string(),
                       "q=Z r=2*Z", res.quotient == zz && res.remainder == Rational(2) * zz && res.exact);
        }
    }
    const SeriesRingSpec ring(p, {"S", "Z"}, {}, o.degree_cap);
    const auto z = MixedSeries::variable(ring, "Z"), s = MixedSeries::variable(ring, "S");
    for (std::size_t i = 0; i < o.weierstrass_pairs; ++i) {
        const unsigned n = 1 + static_cast<unsigned>(rng.below(3));
        // f = Z^n·unit + p·(…) + S·(…), distinguished of residual order n
        MixedSeries unit = MixedSeries::constant(ring, random_coefficient(p, rng, 0, 0)) +
                           random_polynomial(ring, rng, 3, 0, 2, 3) * z;
        MixedSeries f = z.pow(n) * unit + Rational(p) * random_polynomial(ring, rng, n + 1, 0, 1, 3) +
                        s * random_polynomial(ring, rng, 3, 0, 1, 3);
        const auto dist = is_distinguished(f, "Z");
        if (!dist.distinguished || *dist.residual_order != n) {
            out.expect("weierstrass_generate/" + pp + "/" + std::to_string(i), f.to_string(), "distinguished", false);
            continue;
        }
        const auto g = random_polynomial(ring, rng, 8, -1, 2);
        weierstrass_case(out, "weierstrass/" + pp + "/" + std::to_string(i), g, f, "Z");
    }
}

inline void dilatation_laws(SuiteResult& out, long p, SuiteRng& rng, const SeriesSuiteOptions& o)
{
    const SeriesRingSpec ring(p, {"S"}, {}, o.degree_cap);
    const std::string pp = "p=" + std::to_string(p);
    const auto s2 = pow(Rational(p), -2) * MixedSeries::variable(ring, "S").pow(2);
    out.expect("dilatation_oracle/" + pp, std::string(dilatation_member(s2, 0) ? "in" : "out") + "," +
                                              (dilatation_member(s2, 1) ? "in" : "out"),
               "in,out", dilatation_member(s2, 0) && !dilatation_member(s2, 1));
    for (std::size_t i = 0; i < o.dilatation_cases; ++i) {
        const auto f = random_polynomial(ring, rng, o.degree_cap, -4, 2);
        bool monotone = true;
        for (unsigned n = 0; n <= 6; ++n)
            if (dilatation_member(f, n))
                for (unsigned m = 0; m < n; ++m)
                    if (!dilatation_member(f, m)) monotone = false;
        out.expect("dilatation_monotone/" + pp + "/" + std::to_string(i), monotone ? "monotone" : f.to_string(),
                   "monotone", monotone);
    }
}

inline void descent_laws(SuiteResult& out, const SeriesSuiteOptions& o)
{
    out.guard("descent/sign", [&] {
        const SeriesRingSpec ring(3, {"s"}, {}, o.degree_cap);
        const auto x = MixedSeries::variable(ring, "s");
        const auto u = symmetric_descent(ring, FiniteGroup::cyclic(2), {{x}, {-x}});
        out.expect("descent/sign", u[0][0].to_string() + "; " + u[0][1].to_string(), "0; -s^2",
                   u[0][0].is_zero() && u[0][1] == -x.pow(2));
    });
    out.guard("descent/swap", [&] {
        const SeriesRingSpec ring(2, {"s1", "s2"}, {}, o.degree_cap);
        const auto a = MixedSeries::variable(ring, "s1"), b = MixedSeries::variable(ring, "s2");
        const auto u = symmetric_descent(ring, FiniteGroup::cyclic(2), {{a, b}, {b, a}});
        out.expect("descent/swap", u[0][0].to_string() + "; " + u[0][1].to_string(), "s1 + s2; s1*s2",
                   u[0][0] == a + b && u[0][1] == a * b);
    });
    out.guard("descent/formal_inverse", [&] {
        // Z/2 acting on Ĝ_m by T ↦ [−1](T)
        const SeriesRingSpec ring(2, {}, {"T"}, o.degree_cap);
        const auto inv = mult_endo(Rational(-1), ring);
        const auto u = symmetric_descent(ring, FiniteGroup::cyclic(2), {{MixedSeries::variable(ring, "T")}, {inv}});
        // e₂ = T·[−1](T) = −T² + T³ − …
        const auto t = MixedSeries::variable(ring, "T");
        out.expect("descent/formal_inverse", u[0][1].truncated(3).to_string(), "T^3 - T^2",
                   u[0][1] == t * inv);
    });
}

inline SuiteResult series_laws(std::uint64_t seed, SeriesSuiteOptions o = {})
{
    SuiteResult out{"series_laws", {}};
    SuiteRng rng(seed);
    for (long p : {2L, 3L}) {
        gauss_laws(out, p, rng, o);
        endo_laws(out, p, o);
        weierstrass_laws(out, p, rng, o);
        dilatation_laws(out, p, rng, o);
    }
    descent_laws(out, o);
    return out;
}

// ---- lattice adaptation ----

struct LatticeInstance {
    CharModule w;
    QMatrix e;
    std::string label;
};

// The projector onto invariants, (1/|G|) Σ ρ(g).
inline QMatrix invariant_projector(const CharModule& m)
{
    QMatrix e(m.rank(), m.rank());
    for (const auto& r : m.action()) e = e + r;
    return Rational(Integer(1), Integer(static_cast<long>(m.group().order()))) * e;
}

inline LatticeInstance random_lattice_instance(SuiteRng& rng)
{
    static const std::vector<std::pair<FiniteGroup, long>> setups{
        {FiniteGroup::cyclic(2), 3}, {FiniteGroup::cyclic(3), 2}, {FiniteGroup::cyclic(4), 3},
        {FiniteGroup::cyclic(3), 5}, {groups::klein4(), 3},      {groups::symmetric3(), 5}};
    const auto& [g, p] = setups[rng.below(setups.size())];
    for (;;) {
        const auto a = random_integer_module(g, p, rng, 3);
        if (a.rank() >= 4) continue;
        const auto b = random_integer_module(g, p, rng, 4 - a.rank());
        const auto m = direct_sum(a, b);
        if (m.rank() > 4) continue;
        // E = diag(E_a, E_b) with each block the identity, zero, or the
        // invariant projector
        auto choose = [&](const CharModule& x) {
            switch (rng.below(3)) {
            case 0: return QMatrix::identity(x.rank());
            case 1: return QMatrix(x.rank(), x.rank());
            default: return invariant_projector(x);
            }
        };
        const QMatrix e0 = block_diagonal(choose(a), choose(b));
        const QMatrix u = random_unimodular(m.rank(), rng);
        const QMatrix ui = linalg::inverse(u);
        const auto w = conjugated(m, u, "W");
        return {w, ui * e0 * u,
                "|G|=" + std::to_string(g.order()) + ",p=" + std::to_string(p) + ",d=" + std::to_string(m.rank())};
    }
}

inline void lattice_case(SuiteResult& out, const std::string& id, const CharModule& w, const QMatrix& e,
                         unsigned precision)
{
    out.guard("adapt/" + id, [&] {
        const std::size_t d = w.rank();
        const QMatrix comp = QMatrix::identity(d) - e;
        const ZMatrix b = adapt_lattice(w, e, precision);
        const auto check = check_adapted_lattice(w, e, b, e, comp, precision);
        const bool unit_index = p_valuation(check.index, w.prime()) == Valuation(0);
        out.expect("adapt/" + id, check.ok ? "index " + to_string(check.index) : check.reason, "passes checker",
                   check.ok && unit_index);
        // nested: V̲_1 = Z_p[Γ]·E·x + p²·E·Z_p^d inside V̲_2 = E·Z_p^d
        std::vector<std::vector<Rational>> cols;
        QMatrix x(d, 1);
        for (std::size_t i = 0; i < d; ++i) x(i, 0) = Rational(static_cast<long>(i % 3) + 1);
        for (const auto& r : w.action()) cols.push_back((r * e * x).column(0));
        const QMatrix sq = Rational(w.prime() * w.prime()) * e;
        for (std::size_t j = 0; j < d; ++j) cols.push_back(sq.column(j));
        const QMatrix v1 = QMatrix::from_columns(d, cols);
        const auto nested = adapt_lattice_nested(w, e, precision, v1);
        const auto inner = check_adapted_lattice(w, e, nested.inner, v1, comp, precision);
        const bool contained = lattice_contains(nested.outer, nested.inner);
        out.expect("adapt_nested/" + id, inner.ok ? (contained ? "W1 ⊆ W2" : "not contained") : inner.reason,
                   "W1 ⊆ W2", inner.ok && contained);
    });
}

inline SuiteResult lattice(std::uint64_t seed, std::size_t count, unsigned precision = 8)
{
    SuiteResult out{"lattice_adaptation", {}};
    const Rational half(Integer(1), Integer(2));
    {
        const auto reg = CharModule::regular(FiniteGroup::cyclic(2), 3);
        const QMatrix e{{half, half}, {half, half}};
        const ZMatrix hand{{2, 2}, {2, -2}};
        const auto check = check_adapted_lattice(reg, e, hand, e, QMatrix::identity(2) - e, precision);
        out.expect("adapt_hand_basis/c2_p3", check.ok ? "index " + to_string(check.index) : check.reason, "index 8",
                   check.ok && check.index == 8);
        lattice_case(out, "c2_p3", reg, e, precision);
    }
    SuiteRng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const auto inst = random_lattice_instance(rng);
        lattice_case(out, std::to_string(i) + "(" + inst.label + ")", inst.w, inst.e, precision);
    }
    return out;
}

} // namespace suites
} // namespace ramcond
