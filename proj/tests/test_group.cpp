#include <gtest/gtest.h>

#include "ramcond/catalog.hpp"
#include "ramcond/group.hpp"

using namespace ramcond;

namespace {

std::vector<std::size_t> class_sizes(const FiniteGroup& g)
{
    std::vector<std::size_t> out;
    for (const auto& c : g.conjugacy_classes()) out.push_back(c.size());
    return out;
}

bool abelian_by_commutators(const FiniteGroup& g)
{
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (g.mul(a, b) != g.mul(b, a)) return false;
    return true;
}

std::size_t count_of_order(const FiniteGroup& g, std::size_t k)
{
    std::size_t c = 0;
    for (std::size_t x = 0; x < g.order(); ++x) c += g.element_order(x) == k;
    return c;
}

} // namespace

TEST(Group, Cyclic)
{
    const auto g = FiniteGroup::cyclic(4);
    EXPECT_EQ(g.order(), 4u);
    EXPECT_EQ(g.element_order(1), 4u);
    EXPECT_EQ(g.conjugacy_classes().size(), 4u);
}

TEST(Group, KleinFour)
{
    const auto v = make_group({GroupSpec::Product{{{GroupSpec::Cyclic{2}}, {GroupSpec::Cyclic{2}}}}});
    ASSERT_EQ(v.order(), 4u);
    for (std::size_t x = 1; x < 4; ++x) EXPECT_EQ(v.element_order(x), 2u);
    EXPECT_EQ(class_sizes(v), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(Group, ExplicitS3Table)
{
    // S3 as permutations in lexicographic order: e, (12), (01), (012), (021), (02)
    const auto s3 = groups::symmetric3();
    const FiniteGroup t(s3.table());
    EXPECT_EQ(t.order(), 6u);
    EXPECT_FALSE(t.is_abelian());
    EXPECT_FALSE(abelian_by_commutators(t));
    auto sizes = class_sizes(t);
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(t.conjugacy_classes().front(), (std::vector<ElementId>{0}));
}

TEST(Group, InvalidTables)
{
    EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), InvalidInput);
    EXPECT_THROW(FiniteGroup({{1, 0}, {0, 1}}), InvalidInput);
    EXPECT_THROW(FiniteGroup({{0, 1, 2}, {1, 0, 2}}), InvalidInput);
    try {
        FiniteGroup({{0, 2}, {1, 0}});
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_EQ(e.invariant().rfind("FiniteGroup.", 0), 0u);
    }
}

TEST(Group, PoolGroupsHaveExpectedShape)
{
    EXPECT_EQ(groups::quaternion8().order(), 8u);
    EXPECT_EQ(count_of_order(groups::quaternion8(), 2), 1u);
    EXPECT_EQ(count_of_order(groups::quaternion8(), 4), 6u);
    EXPECT_EQ(groups::dihedral(4).order(), 8u);
    EXPECT_EQ(count_of_order(groups::dihedral(4), 2), 5u);
    EXPECT_EQ(groups::alternating4().order(), 12u);
    EXPECT_EQ(count_of_order(groups::alternating4(), 3), 8u);
    EXPECT_EQ(groups::dicyclic12().order(), 12u);
    EXPECT_EQ(count_of_order(groups::dicyclic12(), 2), 1u);
    EXPECT_EQ(groups::sl2_f3().order(), 24u);
    EXPECT_EQ(count_of_order(groups::sl2_f3(), 2), 1u);
    EXPECT_EQ(groups::dihedral(6).order(), 12u);
}

TEST(Group, ClassesPartitionAndNormalSubgroupsAreUnions)
{
    for (const auto& g : {groups::symmetric3(), groups::alternating4(), groups::dihedral(4), groups::quaternion8()}) {
        std::vector<int> seen(g.order(), 0);
        for (const auto& c : g.conjugacy_classes())
            for (auto s : c) ++seen[s];
        for (int k : seen) EXPECT_EQ(k, 1);
        for (const auto& h : all_subgroups(g)) {
            if (!h.is_normal()) continue;
            for (const auto& c : g.conjugacy_classes()) {
                const bool in = h.contains(c.front());
                for (auto s : c) EXPECT_EQ(h.contains(s), in);
            }
        }
    }
}

TEST(Group, SubgroupTests)
{
    const auto s3 = groups::symmetric3();
    std::vector<ElementId> a3, transposition;
    for (std::size_t x = 0; x < 6; ++x) {
        if (s3.element_order(x) != 2) a3.push_back(x);
        if (transposition.empty() && s3.element_order(x) == 2) transposition = {0, x};
    }
    auto r = subgroup_tests(a3, s3, 3);
    EXPECT_TRUE(r.is_subgroup);
    EXPECT_TRUE(r.is_normal);
    EXPECT_TRUE(r.is_p_group);
    ASSERT_TRUE(r.cyclic_quotient_generator);
    EXPECT_EQ(s3.element_order(*r.cyclic_quotient_generator), 2u);

    r = subgroup_tests(transposition, s3, 2);
    EXPECT_TRUE(r.is_subgroup);
    EXPECT_FALSE(r.is_normal);

    r = subgroup_tests({0}, s3, 5);
    EXPECT_TRUE(r.is_subgroup && r.is_normal && r.is_p_group);
    EXPECT_FALSE(r.cyclic_quotient_generator);
    r = subgroup_tests({0}, FiniteGroup::cyclic(6), 5);
    EXPECT_TRUE(r.cyclic_quotient_generator);

    EXPECT_FALSE(subgroup_tests({0, 1}, FiniteGroup::cyclic(4), 2).is_subgroup);
}

TEST(Group, SubgroupEnumerationAndTransversal)
{
    EXPECT_EQ(all_subgroups(groups::symmetric3()).size(), 6u);
    EXPECT_EQ(all_subgroups(groups::klein4()).size(), 5u);
    EXPECT_EQ(all_subgroups(groups::quaternion8()).size(), 6u);
    const auto g = FiniteGroup::cyclic(6);
    const Subgroup h(g, {0, 3});
    const auto t = h.left_transversal();
    EXPECT_EQ(t, (std::vector<ElementId>{0, 1, 2}));
    EXPECT_EQ(h.as_group().order(), 2u);
    EXPECT_EQ(h.local_id(3), 1u);
}
