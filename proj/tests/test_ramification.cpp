#include <complex>

#include <gtest/gtest.h>

#include "ramcond/catalog.hpp"
#include "ramcond/ramification.hpp"

using namespace ramcond;

namespace {

RamData wild_c2() {
    const auto g = FiniteGroup::cyclic(2);
    return RamData(g, 2, {Subgroup::whole(g)}, RamData::OmegaByGenerator{0, 0});
}

// Floating-point evaluation of the defining formula, independent of CycloNum arithmetic.
std::complex<double> bisection_oracle(const RamData& rd, ElementId s)
{
    long total = 0;
    for (std::size_t t = 1; t < rd.group().order(); ++t) total += i_gamma(rd, t);
    if (s == 0) return 0.5 * static_cast<double>(total);
    if (rd.wild_inertia().contains(s)) return -0.5 * static_cast<double>(i_gamma(rd, s));
    const double ang = 2 * std::numbers::pi * static_cast<double>(rd.omega_exponent(s)) / rd.tame_order();
    return 1.0 / (std::polar(1.0, ang) - 1.0);
}

} // namespace

TEST(Ramification, IGammaExamples)
{
    const auto tame = RamData::tame_cyclic(3, 2);
    EXPECT_EQ(i_gamma(tame, 1), 1);
    EXPECT_EQ(i_gamma(tame, 2), 1);
    EXPECT_EQ(i_gamma(wild_c2(), 1), 2);
    EXPECT_THROW(i_gamma(tame, 0), DomainError);
}

TEST(Ramification, ArtinCharacterExamples)
{
    const auto c3 = FiniteGroup::cyclic(3);
    EXPECT_EQ(artin_character(RamData::tame_cyclic(3, 2)), ClassFunction(c3, {CycloNum(2), CycloNum(-1), CycloNum(-1)}));
    EXPECT_EQ(artin_character(wild_c2()), ClassFunction(FiniteGroup::cyclic(2), {CycloNum(2), CycloNum(-2)}));
    EXPECT_EQ(artin_character(RamData::tame_cyclic(1, 2)), ClassFunction(FiniteGroup::cyclic(1), {CycloNum(0)}));
}

TEST(Ramification, BisectionExamples)
{
    const auto rd = RamData::tame_cyclic(3, 2);
    const CycloNum z = CycloNum::zeta(3);
    const auto b = bisection(rd);
    EXPECT_EQ(b(0), CycloNum(1));
    EXPECT_EQ(b(1), (z - 1).inverse());
    EXPECT_EQ(b(2), (z * z - 1).inverse());
    EXPECT_EQ(b.level(), 3u);
    EXPECT_EQ(bisection(wild_c2()), ClassFunction(FiniteGroup::cyclic(2), {CycloNum(1), CycloNum(-1)}));
    EXPECT_EQ(bisection(RamData::tame_cyclic(1, 2))(0), CycloNum(0));
}

TEST(Ramification, BisectionMatchesFloatingOracle)
{
    for (const auto& fx : catalog()) {
        const auto b = bisection(fx.rd);
        for (std::size_t s = 0; s < fx.rd.group().order(); ++s)
            EXPECT_LT(std::abs(b(s).to_complex() - bisection_oracle(fx.rd, s)), 1e-9) << fx.id << " s=" << s;
    }
}

TEST(Ramification, BisectionIdentityOnCatalogAndRandom)
{
    auto check = [](const RamData& rd, const std::string& id) {
        const auto b = bisection(rd);
        EXPECT_EQ(b + conjugate(b), artin_character(rd)) << id;
        const auto a = artin_character(rd);
        CycloNum total(0);
        for (const auto& v : a.values()) total += v;
        EXPECT_EQ(total, CycloNum(0)) << id;
        EXPECT_EQ(b(0), CycloNum(Rational(disc_valuation(rd, Subgroup::trivial(rd.group())), 2))) << id;
    };
    for (const auto& fx : catalog()) check(fx.rd, fx.id);
    RandomRamData gen(42);
    for (int i = 0; i < 60; ++i) check(gen.next(), "random#" + std::to_string(i));
}

TEST(Ramification, IGammaIsClassInvariant)
{
    for (const auto& fx : catalog())
        for (const auto& cls : fx.rd.group().conjugacy_classes())
            for (auto s : cls)
                if (s) EXPECT_EQ(i_gamma(fx.rd, s), i_gamma(fx.rd, cls.front())) << fx.id;
}

TEST(Ramification, DiscValuationExamples)
{
    const auto tame = RamData::tame_cyclic(3, 2);
    EXPECT_EQ(disc_valuation(tame, Subgroup::whole(tame.group())), 0);
    EXPECT_EQ(disc_valuation(tame, Subgroup::trivial(tame.group())), 2);
    const auto w = wild_c2();
    EXPECT_EQ(disc_valuation(w, Subgroup::trivial(w.group())), 2);
}

TEST(Ramification, RestrictRamData)
{
    const auto tame = RamData::tame_cyclic(3, 2);
    const auto same = restrict_ramdata(tame, Subgroup::whole(tame.group()));
    EXPECT_EQ(bisection(same), bisection(tame));
    EXPECT_EQ(restrict_ramdata(tame, Subgroup::trivial(tame.group())).group().order(), 1u);

    const auto g = FiniteGroup::cyclic(4);
    const Subgroup sq(g, {0, 2});
    const RamData rd(g, 2, {Subgroup::whole(g), sq, sq}, RamData::OmegaByGenerator{0, 0});
    const auto r = restrict_ramdata(rd, sq);
    EXPECT_EQ(r.wild_chain().size(), 3u);
    EXPECT_EQ(i_gamma(r, 1), 4);
}

TEST(Ramification, RestrictionIdentity)
{
    const Rational half(Integer(1), Integer(2));
    for (const auto& fx : catalog())
        for (const auto& h : all_subgroups(fx.rd.group())) {
            const auto lhs = restrict(bisection(fx.rd), h);
            const auto rhs = bisection(restrict_ramdata(fx.rd, h)) +
                             CycloNum(half * Rational(disc_valuation(fx.rd, h))) * ClassFunction::regular(h.as_group());
            EXPECT_EQ(lhs, rhs) << fx.id;
        }
}

TEST(Ramification, BisectionThroughPairing)
{
    for (const auto& fx : catalog()) {
        const auto b = bisection(fx.rd);
        for (const auto& chi : {ClassFunction::trivial(fx.rd.group()), ClassFunction::regular(fx.rd.group())})
            EXPECT_EQ(pair(b, chi) + pair(conjugate(b), chi), artin_conductor(fx.rd, chi)) << fx.id;
    }
}

TEST(Ramification, Validation)
{
    auto invariant_of = [](auto&& make) -> std::string {
        try {
            make();
        } catch (const InvalidInput& e) {
            return e.invariant();
        }
        return "";
    };
    const auto c4 = FiniteGroup::cyclic(4);
    const auto c6 = FiniteGroup::cyclic(6);
    EXPECT_EQ(invariant_of([&] { RamData(c4, 4, {}, RamData::OmegaByGenerator{1, 1}); }), "RamData.prime");
    EXPECT_EQ(invariant_of([&] { RamData(c4, 3, {Subgroup(c4, {0, 2})}, RamData::OmegaByGenerator{1, 1}); }),
              "RamData.wild_p_group");
    EXPECT_EQ(invariant_of([&] { RamData(c4, 2, {Subgroup(c4, {0, 2}), Subgroup::whole(c4)}, RamData::OmegaByGenerator{1, 1}); }),
              "RamData.chain_descending");
    EXPECT_EQ(invariant_of([&] { RamData(c4, 2, {Subgroup::whole(c4)}, RamData::OmegaByGenerator{0, 0}); }),
              "RamData.elementary_abelian");
    EXPECT_EQ(invariant_of([&] { RamData(c6, 2, {}, RamData::OmegaByGenerator{1, 1}); }),
              "RamData.tame_order_prime_to_p");
    EXPECT_EQ(invariant_of([&] { RamData(c6, 5, {}, RamData::OmegaByGenerator{1, 2}); }), "RamData.omega_injective");
    EXPECT_EQ(invariant_of([&] { RamData(c6, 5, {}, RamData::OmegaByGenerator{2, 1}); }), "RamData.omega_generator");
    const auto s3 = groups::symmetric3();
    EXPECT_EQ(invariant_of([&] { RamData(s3, 2, {Subgroup(s3, {0, 1})}, RamData::OmegaByGenerator{3, 1}); }),
              "RamData.chain_normal");
    EXPECT_EQ(invariant_of([&] {
                  RamData(c6, 5, {}, RamData::OmegaCosetMap{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 1}});
              }),
              "RamData.omega_homomorphism");
}

TEST(Ramification, RandomGeneratorCoversNonAbelianGroups)
{
    RandomRamData gen(1);
    bool non_abelian = false, wild = false, long_chain = false;
    for (int i = 0; i < 200; ++i) {
        const auto rd = gen.next();
        EXPECT_LE(rd.group().order(), 24u);
        non_abelian |= !rd.group().is_abelian();
        wild |= rd.wild_inertia().order() > 1;
        long_chain |= rd.wild_chain().size() >= 3;
    }
    EXPECT_TRUE(non_abelian);
    EXPECT_TRUE(wild);
    EXPECT_TRUE(long_chain);
}
