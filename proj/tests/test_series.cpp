#include <gtest/gtest.h>

#include "ramcond/series.hpp"
#include "ramcond/series_parse.hpp"
#include "ramcond/suites.hpp"

using namespace ramcond;

namespace {

SeriesRingSpec ring1(long p, const std::string& v = "S", unsigned cap = 16)
{
    if (v[0] == 'T') return SeriesRingSpec(p, {}, {v}, cap);
    return SeriesRingSpec(p, {v}, {}, cap);
}

Rational q(long a, long b = 1) { return Rational(Integer(a), Integer(b)); }

} // namespace

TEST(SeriesRing, Validation)
{
    EXPECT_THROW(SeriesRingSpec(4, {"S"}, {}, 8).validate(), InvalidInput);
    EXPECT_THROW(SeriesRingSpec(2, {"S", "S"}, {}, 8).validate(), InvalidInput);
    EXPECT_THROW(SeriesRingSpec(2, {"1x"}, {}, 8).validate(), InvalidInput);
    EXPECT_THROW(SeriesRingSpec(2, {"p"}, {}, 8).validate(), InvalidInput);
    EXPECT_NO_THROW(SeriesRingSpec(2, {"S"}, {"T"}, 8).validate());
}

TEST(Gauss, Examples)
{
    const auto r = ring1(3);
    const auto s = MixedSeries::variable(r, "S");
    EXPECT_EQ(gauss_valuation(q(1, 9) * s + MixedSeries::constant(r, q(3))), Valuation(-2));
    EXPECT_TRUE(gauss_valuation(MixedSeries(r)).is_infinite());
    EXPECT_EQ(gauss_valuation(MixedSeries::constant(r, q(5))), Valuation(0));
    EXPECT_FALSE(is_lattice_member(q(1, 3) * s));
    EXPECT_TRUE(is_lattice_member(q(3) * s + MixedSeries::constant(r, q(1, 2))));
}

TEST(Gauss, ProductOfUnitsExample)
{
    const auto r = SeriesRingSpec(2, {"S"}, {"T"}, 16);
    const auto s = MixedSeries::variable(r, "S"), t = MixedSeries::variable(r, "T");
    const auto one = MixedSeries::constant(r, q(1));
    EXPECT_EQ(gauss_valuation((one + s) * (one - t)), Valuation(0));
}

TEST(Arithmetic, GeometricSeriesInverse)
{
    const auto r = ring1(2, "S", 10);
    const auto s = MixedSeries::variable(r, "S");
    const auto one = MixedSeries::constant(r, q(1));
    MixedSeries geo(r);
    for (unsigned k = 0; k <= 10; ++k) geo += s.pow(k);
    EXPECT_EQ((one - s) * geo, one);
    EXPECT_EQ(detail::unit_inverse(one - s), geo);
}

TEST(Arithmetic, RingMismatchRejected)
{
    const auto a = MixedSeries::variable(ring1(2), "S");
    const auto b = MixedSeries::variable(ring1(3), "S");
    EXPECT_THROW(a + b, DomainError);
}

TEST(Arithmetic, Rendering)
{
    const auto r = ring1(2, "Z");
    const auto z = MixedSeries::variable(r, "Z");
    EXPECT_EQ((z.pow(2) - MixedSeries::constant(r, q(2))).to_string(), "Z^2 - 2");
    EXPECT_EQ((q(2) * z).to_string(), "2*Z");
    EXPECT_EQ(MixedSeries(r).to_string(), "0");
}

TEST(Dilatation, Examples)
{
    const auto r = ring1(2);
    const auto s = MixedSeries::variable(r, "S");
    const auto f = q(1, 4) * s.pow(2);
    EXPECT_TRUE(dilatation_member(f, 0));
    EXPECT_FALSE(dilatation_member(f, 1));
    EXPECT_TRUE(dilatation_member(q(1, 2) * s.pow(2), 1));
    EXPECT_FALSE(dilatation_member(q(1, 2) * s, 1));
    EXPECT_THROW(dilatation_member(MixedSeries::variable(ring1(2, "T"), "T"), 0), DomainError);
}

TEST(Distinguished, Examples)
{
    const auto r = SeriesRingSpec(3, {"S", "Z"}, {}, 16);
    const auto z = MixedSeries::variable(r, "Z"), s = MixedSeries::variable(r, "S");
    const auto c = [&](long v) { return MixedSeries::constant(r, q(v)); };
    const auto a = is_distinguished(z.pow(2) - c(3), "Z");
    EXPECT_TRUE(a.distinguished);
    EXPECT_EQ(a.residual_order, 2u);
    EXPECT_FALSE(is_distinguished(z + c(1), "Z").distinguished);
    const auto b = is_distinguished(z.pow(2) + s * z + c(3), "Z");
    EXPECT_TRUE(b.distinguished);
    EXPECT_EQ(b.residual_order, 2u);
    EXPECT_FALSE(is_distinguished(q(3) * z, "Z").distinguished);
    EXPECT_FALSE(is_distinguished(q(1, 3) * z.pow(2), "Z").distinguished);
}

TEST(Distinguished, PowerBoundedOtherVariableRejected)
{
    const auto r = SeriesRingSpec(2, {"Z"}, {"T"}, 8);
    EXPECT_THROW(is_distinguished(MixedSeries::variable(r, "Z"), "Y"), DomainError);
    EXPECT_NO_THROW(is_distinguished(MixedSeries::variable(r, "T"), "T"));
    EXPECT_THROW(is_distinguished(MixedSeries::variable(r, "Z"), "Z"), DomainError);
}

TEST(Weierstrass, ExactOracle)
{
    const auto r = ring1(2, "Z");
    const auto z = MixedSeries::variable(r, "Z");
    const auto f = z.pow(2) - MixedSeries::constant(r, q(2));
    const auto res = weierstrass_divide(z.pow(3), f, "Z");
    EXPECT_EQ(res.quotient, z);
    EXPECT_EQ(res.remainder, q(2) * z);
    EXPECT_TRUE(res.exact);
    EXPECT_EQ(res.residual_order, 2u);

    const auto self = weierstrass_divide(f, f, "Z");
    EXPECT_EQ(self.quotient, MixedSeries::constant(r, q(1)));
    EXPECT_TRUE(self.remainder.is_zero());

    const auto low = weierstrass_divide(z, f, "Z");
    EXPECT_TRUE(low.quotient.is_zero());
    EXPECT_EQ(low.remainder, z);
}

TEST(Weierstrass, RejectsNonDistinguished)
{
    const auto r = ring1(2, "Z");
    const auto z = MixedSeries::variable(r, "Z");
    try {
        weierstrass_divide(z, z + MixedSeries::constant(r, q(1)), "Z");
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.invariant(), "Weierstrass.distinguished");
    }
}

TEST(Weierstrass, UnitDivisorGivesZeroRemainder)
{
    const auto r = SeriesRingSpec(3, {"S", "Z"}, {}, 12);
    const auto z = MixedSeries::variable(r, "Z"), s = MixedSeries::variable(r, "S");
    const auto f = z.pow(2) + q(3) * z + s;
    const auto g = z.pow(5) + q(1, 2) * s * z - MixedSeries::constant(r, q(7));
    const auto res = weierstrass_divide(g, f, "Z");
    const auto err = res.quotient * f + res.remainder - g;
    if (res.exact)
        EXPECT_TRUE(err.is_zero());
    else
        EXPECT_GE(gauss_valuation(err), Valuation(res.precision));
    for (const auto& [e, c] : res.remainder.terms()) EXPECT_LT(e[1], 2u);
}

TEST(Endo, Examples)
{
    const auto r = ring1(2, "T", 8);
    const auto t = MixedSeries::variable(r, "T");
    EXPECT_EQ(mult_endo(q(2), r), q(2) * t + t.pow(2));
    EXPECT_EQ(endo_to_scalar(mult_endo(q(2), r)), q(2));
    EXPECT_FALSE(endo_to_scalar(t.pow(2)).has_value());
    EXPECT_EQ(compose(mult_endo(q(3), r), {mult_endo(q(5), r)}, r), mult_endo(q(15), r));
    EXPECT_NO_THROW(mult_endo(q(1, 3), r));
    try {
        mult_endo(q(1, 2), r);
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.invariant(), "Endomorphism.p_integral");
    }
}

TEST(Endo, MinusOneIsFormalInverse)
{
    const auto r = ring1(3, "T", 12);
    const auto t = MixedSeries::variable(r, "T");
    const auto one = MixedSeries::constant(r, q(1));
    // (1 + T)(1 + [−1](T)) = 1
    EXPECT_EQ((one + t) * (one + mult_endo(q(-1), r)), one);
}

TEST(Endo, FormalGroupHomomorphism)
{
    const auto one = ring1(2, "T", 10);
    const auto two = SeriesRingSpec(2, {}, {"TX", "TY"}, 10);
    const auto law = multiplicative_law(two);
    const auto x = MixedSeries::variable(two, "TX"), y = MixedSeries::variable(two, "TY");
    EXPECT_EQ(law, x + y + x * y);
    for (long r : {2L, -1L}) {
        const auto e = mult_endo(q(r), one);
        EXPECT_EQ(compose(e, {law}, two), compose(law, {compose(e, {x}, two), compose(e, {y}, two)}, two));
    }
}

TEST(Compose, RequiresNilpotentImages)
{
    const auto r = ring1(2, "T", 6);
    const auto t = MixedSeries::variable(r, "T");
    EXPECT_THROW(compose(t, {t + MixedSeries::constant(r, q(1))}, r), DomainError);
    EXPECT_THROW(compose(t, {t, t}, r), DomainError);
}

TEST(Descent, Examples)
{
    const auto r = ring1(3, "s", 8);
    const auto x = MixedSeries::variable(r, "s");
    const auto u = symmetric_descent(r, FiniteGroup::cyclic(2), {{x}, {-x}});
    ASSERT_EQ(u.size(), 1u);
    ASSERT_EQ(u[0].size(), 2u);
    EXPECT_TRUE(u[0][0].is_zero());
    EXPECT_EQ(u[0][1], -x.pow(2));

    const auto t = symmetric_descent(r, FiniteGroup::cyclic(1), {{x}});
    EXPECT_EQ(t[0][0], x);

    const auto r2 = SeriesRingSpec(2, {"s1", "s2"}, {}, 8);
    const auto a = MixedSeries::variable(r2, "s1"), b = MixedSeries::variable(r2, "s2");
    const auto sw = symmetric_descent(r2, FiniteGroup::cyclic(2), {{a, b}, {b, a}});
    EXPECT_EQ(sw[0][0], a + b);
    EXPECT_EQ(sw[0][1], a * b);
    EXPECT_EQ(sw[1][0], a + b);
}

TEST(Descent, InvalidActions)
{
    const auto r = ring1(3, "s", 8);
    const auto x = MixedSeries::variable(r, "s");
    const auto expect_invariant = [&](const SubstitutionAction& act, const std::string& inv) {
        try {
            symmetric_descent(r, FiniteGroup::cyclic(2), act);
            ADD_FAILURE() << inv;
        } catch (const InvalidInput& e) {
            EXPECT_EQ(e.invariant(), inv);
        }
    };
    expect_invariant({{x}}, "Descent.action_size");
    expect_invariant({{x}, {x, x}}, "Descent.substitution_size");
    expect_invariant({{-x}, {x}}, "Descent.identity");
    expect_invariant({{x}, {x + MixedSeries::constant(r, q(1))}}, "Descent.constant_term");
    expect_invariant({{x}, {q(2) * x}}, "Descent.homomorphism");
}

TEST(SeriesSuite, AllLawsHold)
{
    const auto res = suites::series_laws(7);
    for (const auto& c : res.checks)
        EXPECT_TRUE(c.pass) << c.name << ": " << c.lhs << " vs " << c.rhs;
    EXPECT_GT(res.checks.size(), 400u);
}

TEST(Parse, Basics)
{
    const auto r = SeriesRingSpec(2, {"S", "Z"}, {"T"}, 8);
    const auto z = MixedSeries::variable(r, "Z"), s = MixedSeries::variable(r, "S");
    EXPECT_EQ(parse_series("Z^2 - 2", r), z.pow(2) - MixedSeries::constant(r, q(2)));
    EXPECT_EQ(parse_series("Z^2 + S*Z + p", r), z.pow(2) + s * z + MixedSeries::constant(r, q(2)));
    EXPECT_EQ(parse_series("p^-2*S^2", r), q(1, 4) * s.pow(2));
    EXPECT_EQ(parse_series("S/3 \xE2\x88\x92 (1 + Z)^2", r),
              q(1, 3) * s - (MixedSeries::constant(r, q(1)) + z).pow(2));
    EXPECT_EQ(parse_series("-T", r), -MixedSeries::variable(r, "T"));
}

TEST(Parse, Errors)
{
    const auto r = SeriesRingSpec(2, {"S"}, {}, 8);
    for (const char* bad : {"S^-1", "1/S", "S +", "(S", "X", "S $ 2", "1/0", "S^"}) {
        try {
            parse_series(bad, r);
            ADD_FAILURE() << bad;
        } catch (const InvalidInput& e) {
            EXPECT_EQ(e.invariant(), "Series.syntax") << bad;
        }
    }
}

TEST(Parse, RoundTrip)
{
    SuiteRng rng(11);
    const auto r = SeriesRingSpec(3, {"S", "Z"}, {"T"}, 10);
    for (int i = 0; i < 100; ++i) {
        const auto f = suites::random_polynomial(r, rng, 6, -2, 2);
        EXPECT_EQ(parse_series(f.to_string(), r), f) << f.to_string();
    }
}

TEST(Parse, RingInference)
{
    const auto r = infer_ring({"Z^3", "Z^2 + S*Z + p"}, 2, 16, "Z");
    EXPECT_EQ(r.s_vars, (std::vector<std::string>{"S", "Z"}));
    EXPECT_TRUE(r.t_vars.empty());
    const auto t = infer_ring({"T + T2", "A"}, 3, 8);
    EXPECT_EQ(t.s_vars, (std::vector<std::string>{"A"}));
    EXPECT_EQ(t.t_vars, (std::vector<std::string>{"T", "T2"}));
    const auto l = infer_ring({"Z*A + B"}, 3, 8, "A");
    EXPECT_EQ(l.s_vars, (std::vector<std::string>{"B", "Z", "A"}));
}
