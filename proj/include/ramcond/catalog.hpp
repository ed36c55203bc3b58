#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ramcond/group.hpp"
#include "ramcond/ramification.hpp"

namespace ramcond {

using Permutation = std::vector<unsigned>;

// Group generated by permutations of {0, …, m−1}. Elements are numbered in
// lexicographic order, so the identity is 0.
inline FiniteGroup permutation_group(const std::vector<Permutation>& gens)
{
    if (gens.empty()) return FiniteGroup::cyclic(1);
    const std::size_t m = gens.front().size();
    Permutation id(m);
    for (unsigned i = 0; i < m; ++i) id[i] = i;
    auto compose = [m](const Permutation& a, const Permutation& b) {
        Permutation c(m);
        for (unsigned i = 0; i < m; ++i) c[i] = a[b[i]];
        return c;
    };
    std::set<Permutation> elems{id};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
            for (const auto& s : gens) {
                if (s.size() != m) throw InvalidInput("Permutation.size", "generators act on different sets");
                auto y = compose(x, s);
                if (elems.insert(y).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    const std::vector<Permutation> list(elems.begin(), elems.end());
    std::map<Permutation, ElementId> index;
    for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = i;
    std::vector<std::vector<ElementId>> table(list.size(), std::vector<ElementId>(list.size()));
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = 0; j < list.size(); ++j) table[i][j] = index.at(compose(list[i], list[j]));
    return FiniteGroup(std::move(table));
}

namespace groups {

inline FiniteGroup symmetric3() { return permutation_group({{1, 0, 2}, {1, 2, 0}}); }
inline FiniteGroup alternating4() { return permutation_group({{1, 2, 0, 3}, {1, 0, 3, 2}}); }
inline FiniteGroup klein4() { return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)); }

inline FiniteGroup dihedral(unsigned k)
{
    Permutation r(k), s(k);
    for (unsigned i = 0; i < k; ++i) {
        r[i] = (i + 1) % k;
        s[i] = (k - i) % k;
    }
    return permutation_group({r, s});
}

// Q8 = {±1, ±i, ±j, ±k} acting on itself by left multiplication.
inline FiniteGroup quaternion8()
{
    // ±u with u ∈ {1, i, j, k} has index 4·[sign < 0] + u
    static constexpr unsigned unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr bool flip[4][4] = {{false, false, false, false},
                                       {false, true, false, true},
                                       {false, true, true, false},
                                       {false, false, true, true}};
    auto times = [](unsigned a, unsigned b) {
        const bool neg = ((a >= 4) != (b >= 4)) != flip[a % 4][b % 4];
        return (neg ? 4u : 0u) + unit[a % 4][b % 4];
    };
    Permutation left_i(8), left_j(8);
    for (unsigned x = 0; x < 8; ++x) {
        left_i[x] = times(1, x);
        left_j[x] = times(2, x);
    }
    return permutation_group({left_i, left_j});
}

// Dic3 = ⟨a, x | a⁶ = 1, x² = a³, x a x⁻¹ = a⁻¹⟩ by left multiplication.
inline FiniteGroup dicyclic12()
{
    // elements a^m x^e with a^6 = 1, x² = a³, x a x⁻¹ = a⁻¹; index 2m + e
    auto idx = [](unsigned m, unsigned e) { return 2 * (m % 6) + e; };
    Permutation left_a(12), left_x(12);
    for (unsigned m = 0; m < 6; ++m)
        for (unsigned e = 0; e < 2; ++e) {
            left_a[idx(m, e)] = idx(m + 1, e);
            left_x[idx(m, e)] = e == 0 ? idx(6 - m, 1) : idx(9 - m, 0);
        }
    return permutation_group({left_a, left_x});
}

// SL(2, F_3) acting on the 8 nonzero vectors of F_3².
inline FiniteGroup sl2_f3()
{
    std::vector<std::pair<int, int>> vecs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a || b) vecs.emplace_back(a, b);
    auto perm_of = [&](int m00, int m01, int m10, int m11) {
        Permutation p(vecs.size());
        for (unsigned i = 0; i < vecs.size(); ++i) {
            const auto [x, y] = vecs[i];
            const std::pair<int, int> img{(m00 * x + m01 * y) % 3, (m10 * x + m11 * y) % 3};
            p[i] = static_cast<unsigned>(std::find(vecs.begin(), vecs.end(), img) - vecs.begin());
        }
        return p;
    };
    return permutation_group({perm_of(1, 1, 0, 1), perm_of(1, 0, 1, 1)});
}

} // namespace groups

struct Fixture {
    std::string id;
    RamData rd;
};

inline Subgroup generated(const FiniteGroup& g, std::vector<ElementId> gens)
{
    return Subgroup(g, generated_subgroup(g, gens));
}

// Built-in ramification data. Tame cyclic entries, cyclic p-towers, a mixed
// tame × wild product, Klein four at p = 2, and a few non-abelian cases.
inline std::vector<Fixture> catalog()
{
    std::vector<Fixture> out;
    const std::pair<unsigned, long> tame[] = {{2, 3}, {3, 2}, {4, 3}, {5, 2}, {6, 5}, {7, 2}};
    for (auto [n, p] : tame)
        out.push_back({"tame_c" + std::to_string(n) + "_p" + std::to_string(p), RamData::tame_cyclic(n, p)});

    auto wild_cyclic = [&](std::string id, std::size_t n, long p, std::vector<std::size_t> gen_powers) {
        const FiniteGroup g = FiniteGroup::cyclic(n);
        std::vector<Subgroup> chain;
        for (auto k : gen_powers) chain.push_back(generated(g, {k % n}));
        out.push_back({std::move(id), RamData(g, p, chain, RamData::OmegaByGenerator{0, 0})});
    };
    wild_cyclic("wild_c2_p2_break1", 2, 2, {1});
    wild_cyclic("wild_c2_p2_break3", 2, 2, {1, 1, 1});
    wild_cyclic("wild_c4_p2", 4, 2, {1, 2, 2});
    wild_cyclic("wild_c3_p3", 3, 3, {1});
    wild_cyclic("wild_c9_p3", 9, 3, {1, 3, 3, 3});

    {
        // C3 × C2: (a, b) has id 2a + b; Γ_1 = {(0,0), (0,1)}
        const FiniteGroup g = FiniteGroup::product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        const Subgroup w(g, {0, 1});
        out.push_back({"mixed_c3xc2_p2", RamData(g, 2, {w, w, w}, RamData::OmegaByGenerator{2, 1})});
    }
    {
        const FiniteGroup v = groups::klein4();
        const Subgroup h(v, {0, 1});
        out.push_back({"klein4_p2_break1", RamData(v, 2, {Subgroup::whole(v)}, RamData::OmegaByGenerator{0, 0})});
        out.push_back({"klein4_p2_breaks_1_3", RamData(v, 2, {Subgroup::whole(v), h, h}, RamData::OmegaByGenerator{0, 0})});
    }
    {
        const FiniteGroup s3 = groups::symmetric3();
        std::vector<ElementId> even;
        for (std::size_t x = 0; x < s3.order(); ++x)
            if (s3.element_order(x) != 2) even.push_back(x);
        const Subgroup alt(s3, even);
        ElementId transposition = 0;
        for (std::size_t x = 0; x < s3.order(); ++x)
            if (s3.element_order(x) == 2) {
                transposition = x;
                break;
            }
        out.push_back({"s3_p3", RamData(s3, 3, {alt}, RamData::OmegaByGenerator{transposition, 1})});
    }
    {
        const FiniteGroup a4 = groups::alternating4();
        std::vector<ElementId> v4;
        ElementId three_cycle = 0;
        for (std::size_t x = 0; x < a4.order(); ++x) {
            if (a4.element_order(x) != 3) v4.push_back(x);
            else if (!three_cycle) three_cycle = x;
        }
        out.push_back({"a4_p2", RamData(a4, 2, {Subgroup(a4, v4)}, RamData::OmegaByGenerator{three_cycle, 1})});
    }
    out.push_back({"trivial_p2", RamData::tame_cyclic(1, 2)});
    return out;
}

// Deterministic generator of structurally valid ramification data with
// |Γ| ≤ 24, over a fixed pool of abelian and non-abelian groups.
class RandomRamData {
public:
    explicit RandomRamData(std::uint64_t seed) : rng_(seed)
    {
        std::vector<FiniteGroup> pool;
        for (std::size_t n = 1; n <= 24; ++n) pool.push_back(FiniteGroup::cyclic(n));
        const auto c = [](std::size_t n) { return FiniteGroup::cyclic(n); };
        pool.push_back(groups::klein4());
        pool.push_back(FiniteGroup::product(c(2), c(4)));
        pool.push_back(FiniteGroup::product(c(2), c(6)));
        pool.push_back(FiniteGroup::product(c(3), c(3)));
        pool.push_back(FiniteGroup::product(groups::klein4(), c(2)));
        pool.push_back(FiniteGroup::product(c(2), c(8)));
        pool.push_back(FiniteGroup::product(c(4), c(4)));
        pool.push_back(FiniteGroup::product(groups::klein4(), c(3)));
        pool.push_back(FiniteGroup::product(groups::klein4(), c(5)));
        pool.push_back(FiniteGroup::product(c(3), c(6)));
        pool.push_back(groups::symmetric3());
        pool.push_back(groups::dihedral(4));
        pool.push_back(groups::quaternion8());
        pool.push_back(groups::alternating4());
        pool.push_back(groups::dihedral(5));
        pool.push_back(groups::dihedral(6));
        pool.push_back(groups::dicyclic12());
        pool.push_back(groups::sl2_f3());
        pool.push_back(FiniteGroup::product(groups::symmetric3(), c(2)));
        pool.push_back(FiniteGroup::product(groups::dihedral(4), c(3)));
        pool.push_back(FiniteGroup::product(groups::quaternion8(), c(3)));
        for (const auto& g : pool) add_options(g);
    }

    std::size_t option_count() const { return options_.size(); }

    RamData next()
    {
        const Option& o = options_[below(options_.size())];
        const FiniteGroup& g = o.group;
        std::vector<Subgroup> chain;
        if (o.wild->order() > 1) {
            Subgroup cur = *o.wild;
            chain.push_back(cur);
            while (cur.order() > 1 && chain.size() < 8) {
                if (below(3) == 0) {
                    chain.push_back(cur);
                    continue;
                }
                std::vector<const Subgroup*> steps;
                for (const auto& nrm : o.normals)
                    if (nrm.order() < cur.order() && nrm.is_subset_of(cur) && elementary_step(g, cur, nrm, o.p))
                        steps.push_back(&nrm);
                cur = *steps[below(steps.size())];
                if (cur.order() > 1 || below(2) == 0) chain.push_back(cur);
            }
        }
        const std::size_t n = g.order() / o.wild->order();
        std::vector<long> units;
        for (std::size_t k = 1; k <= std::max<std::size_t>(n, 1); ++k)
            if (std::gcd(k, n) == 1) units.push_back(static_cast<long>(k % std::max<std::size_t>(n, 1)));
        const long e = units[below(units.size())];
        return RamData(g, o.p, std::move(chain), RamData::OmegaByGenerator{*o.generator, e});
    }

    std::uint64_t below(std::uint64_t n) { return rng_() % n; }
    std::mt19937_64& engine() { return rng_; }

private:
    struct Option {
        FiniteGroup group;
        long p;
        std::optional<Subgroup> wild;
        std::optional<ElementId> generator;
        std::vector<Subgroup> normals;
    };

    static bool elementary_step(const FiniteGroup& g, const Subgroup& a, const Subgroup& b, long p)
    {
        for (auto x : a.elements()) {
            if (!b.contains(g.power(x, p))) return false;
            for (auto y : a.elements())
                if (!b.contains(g.mul(g.mul(x, y), g.inv(g.mul(y, x))))) return false;
        }
        return true;
    }

    void add_options(const FiniteGroup& g)
    {
        std::vector<Subgroup> normals;
        for (auto& s : all_subgroups(g))
            if (s.is_normal()) normals.push_back(std::move(s));
        for (long p : {2L, 3L, 5L, 7L}) {
            std::size_t part = 1;
            for (std::size_t m = g.order(); m % static_cast<std::size_t>(p) == 0; m /= static_cast<std::size_t>(p))
                part *= static_cast<std::size_t>(p);
            for (const auto& s : normals) {
                if (s.order() != part) continue;
                const auto rep = subgroup_tests(s.elements(), g, p);
                if (!rep.cyclic_quotient_generator) continue;
                options_.push_back({g, p, s, rep.cyclic_quotient_generator, normals});
            }
        }
    }

    std::mt19937_64 rng_;
    std::vector<Option> options_;
};

} // namespace ramcond
