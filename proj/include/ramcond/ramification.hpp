#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ramcond/class_function.hpp"
#include "ramcond/cyclotomic.hpp"
#include "ramcond/group.hpp"

namespace ramcond {

// Ramification data of a totally ramified Galois extension with group Γ:
// the lower filtration Γ = Γ_0 ⊇ Γ_1 ⊇ … and the tame identification
// ω: Γ/Γ_1 ≅ μ_n, stored as an exponent per element (ω(s) = ζ_n^exp(s)).
class RamData {
public:
    struct OmegaByGenerator {
        ElementId generator;
        long exponent;
    };
    // Coset representative → exponent; every coset of Γ_1 must be covered.
    using OmegaCosetMap = std::vector<std::pair<ElementId, long>>;
    using OmegaSpec = std::variant<OmegaByGenerator, OmegaCosetMap>;

    RamData(FiniteGroup group, long p, std::vector<Subgroup> wild_chain, const OmegaSpec& omega)
        : group_(std::move(group)), p_(p), chain_(std::move(wild_chain)), wild_(Subgroup::trivial(group_))
    {
        validate_filtration();
        exponents_ = resolve_omega(omega);
        validate_omega();
    }

    // Tame-only data on a cyclic group of order n with ω(1) = ζ_n^exponent.
    static RamData tame_cyclic(std::size_t n, long p, long exponent = 1)
    {
        return RamData(FiniteGroup::cyclic(n), p, {}, OmegaByGenerator{n > 1 ? 1u : 0u, exponent});
    }

    static RamData from_exponents(FiniteGroup group, long p, std::vector<Subgroup> wild_chain, std::vector<long> exps)
    {
        RamData rd(std::move(group), p, std::move(wild_chain));
        if (exps.size() != rd.group_.order())
            throw InvalidInput("RamData.omega_coverage", "need one ω exponent per element");
        rd.exponents_ = std::move(exps);
        rd.validate_omega();
        return rd;
    }

    const FiniteGroup& group() const { return group_; }
    long prime() const { return p_; }
    const std::vector<Subgroup>& wild_chain() const { return chain_; }
    const Subgroup& wild_inertia() const { return wild_; } // Γ_1
    unsigned tame_order() const { return n_; }              // n = |Γ/Γ_1|
    std::size_t ramification_index() const { return group_.order(); }
    long omega_exponent(ElementId s) const { return exponents_.at(s); }
    const std::vector<long>& omega_exponents() const { return exponents_; }
    CycloNum omega(ElementId s) const { return CycloNum::zeta(n_, exponents_.at(s)); }

private:
    RamData(FiniteGroup group, long p, std::vector<Subgroup> wild_chain)
        : group_(std::move(group)), p_(p), chain_(std::move(wild_chain)), wild_(Subgroup::trivial(group_))
    {
        validate_filtration();
    }

    void validate_filtration()
    {
        if (!is_prime(p_)) throw InvalidInput("RamData.prime", std::to_string(p_) + " is not prime");
        for (std::size_t i = 0; i < chain_.size(); ++i) {
            if (!(chain_[i].parent() == group_))
                throw InvalidInput("RamData.chain_parent", "Γ_" + std::to_string(i + 1) + " is not a subgroup of Γ");
            if (!chain_[i].is_normal())
                throw InvalidInput("RamData.chain_normal", "Γ_" + std::to_string(i + 1) + " is not normal in Γ");
            if (i > 0 && !chain_[i].is_subset_of(chain_[i - 1]))
                throw InvalidInput("RamData.chain_descending",
                                   "Γ_" + std::to_string(i + 1) + " ⊄ Γ_" + std::to_string(i));
        }
        if (!chain_.empty()) wild_ = chain_.front();
        if (!is_power_of(wild_.order(), p_))
            throw InvalidInput("RamData.wild_p_group", "Γ_1 has order " + std::to_string(wild_.order()) +
                                                           ", not a power of " + std::to_string(p_));
        for (std::size_t i = 0; i < chain_.size(); ++i) {
            const Subgroup next = i + 1 < chain_.size() ? chain_[i + 1] : Subgroup::trivial(group_);
            for (auto x : chain_[i].elements()) {
                if (!next.contains(group_.power(x, p_)))
                    throw InvalidInput("RamData.elementary_abelian",
                                       "Γ_" + std::to_string(i + 1) + "/Γ_" + std::to_string(i + 2) +
                                           " has an element of order not dividing p");
                for (auto y : chain_[i].elements()) {
                    const ElementId comm = group_.mul(group_.mul(x, y), group_.inv(group_.mul(y, x)));
                    if (!next.contains(comm))
                        throw InvalidInput("RamData.elementary_abelian", "Γ_" + std::to_string(i + 1) + "/Γ_" +
                                                                             std::to_string(i + 2) + " is not abelian");
                }
            }
        }
        n_ = static_cast<unsigned>(group_.order() / wild_.order());
        if (n_ % static_cast<unsigned>(p_) == 0)
            throw InvalidInput("RamData.tame_order_prime_to_p",
                               "|Γ/Γ_1| = " + std::to_string(n_) + " is divisible by p = " + std::to_string(p_));
    }

    bool same_coset(ElementId a, ElementId b) const { return wild_.contains(group_.mul(group_.inv(a), b)); }

    std::vector<long> resolve_omega(const OmegaSpec& spec) const
    {
        const long n = n_;
        std::vector<long> exps(group_.order(), -1);
        if (auto gen = std::get_if<OmegaByGenerator>(&spec)) {
            if (!group_.contains(gen->generator))
                throw InvalidInput("RamData.omega_generator", "generator id out of range");
            ElementId x = 0;
            for (long j = 0; j < n; ++j) {
                const long e = ((j * gen->exponent) % n + n) % n;
                for (auto w : wild_.elements()) {
                    const ElementId s = group_.mul(x, w);
                    if (exps[s] != -1)
                        throw InvalidInput("RamData.omega_generator", "coset of the generator does not generate Γ/Γ_1");
                    exps[s] = e;
                }
                x = group_.mul(x, gen->generator);
            }
        } else {
            for (const auto& [rep, e] : std::get<OmegaCosetMap>(spec)) {
                if (!group_.contains(rep)) throw InvalidInput("RamData.omega_coverage", "representative out of range");
                const long ee = ((e % n) + n) % n;
                for (std::size_t s = 0; s < group_.order(); ++s) {
                    if (!same_coset(rep, s)) continue;
                    if (exps[s] != -1 && exps[s] != ee)
                        throw InvalidInput("RamData.omega_well_defined", "conflicting exponents on one coset");
                    exps[s] = ee;
                }
            }
        }
        for (auto e : exps)
            if (e == -1) throw InvalidInput("RamData.omega_coverage", "ω is not defined on every coset of Γ_1");
        return exps;
    }

    void validate_omega() const
    {
        const long n = n_;
        for (std::size_t a = 0; a < group_.order(); ++a) {
            if (exponents_[a] < 0 || exponents_[a] >= n)
                throw InvalidInput("RamData.omega_range", "ω exponent outside [0, n)");
            if ((exponents_[a] == 0) != wild_.contains(a))
                throw InvalidInput("RamData.omega_injective", "ω does not have kernel exactly Γ_1");
            for (std::size_t b = 0; b < group_.order(); ++b)
                if ((exponents_[a] + exponents_[b]) % n != exponents_[group_.mul(a, b)])
                    throw InvalidInput("RamData.omega_homomorphism", "ω is not a homomorphism Γ → μ_n");
        }
    }

    FiniteGroup group_;
    long p_;
    std::vector<Subgroup> chain_;
    Subgroup wild_;
    unsigned n_ = 1;
    std::vector<long> exponents_;
};

// i_Γ(s) = 1 + #{i ≥ 1 : s ∈ Γ_i}, for s ≠ e.
inline long i_gamma(const RamData& rd, ElementId s)
{
    if (s == 0) throw DomainError("i_gamma: undefined at the identity");
    if (!rd.group().contains(s)) throw DomainError("i_gamma: element out of range");
    long count = 1;
    for (const auto& g : rd.wild_chain())
        if (g.contains(s)) ++count;
    return count;
}

inline long sum_i_gamma(const RamData& rd)
{
    long total = 0;
    for (std::size_t t = 1; t < rd.group().order(); ++t) total += i_gamma(rd, t);
    return total;
}

// a_Γ(s) = −i_Γ(s) for s ≠ e; a_Γ(e) = Σ_{t≠e} i_Γ(t).
inline ClassFunction artin_character(const RamData& rd)
{
    std::vector<CycloNum> v(rd.group().order());
    v[0] = CycloNum(sum_i_gamma(rd));
    for (std::size_t s = 1; s < v.size(); ++s) v[s] = CycloNum(-i_gamma(rd, s));
    return ClassFunction(rd.group(), std::move(v));
}

// bA_Γ(s) = 1/(ω(s) − 1) off Γ_1, −½ i_Γ(s) on Γ_1 ∖ {e}, ½ Σ_{t≠e} i_Γ(t) at e.
inline ClassFunction bisection(const RamData& rd)
{
    const unsigned n = rd.tame_order();
    const Rational half(Integer(1), Integer(2));
    std::vector<CycloNum> v(rd.group().order(), CycloNum::zero_at(n));
    v[0] = CycloNum(half * Rational(sum_i_gamma(rd))).embed(n);
    for (std::size_t s = 1; s < v.size(); ++s) {
        if (rd.wild_inertia().contains(s))
            v[s] = CycloNum(-half * Rational(i_gamma(rd, s))).embed(n);
        else
            v[s] = (rd.omega(s) - CycloNum(1)).inverse();
    }
    return ClassFunction(rd.group(), std::move(v));
}

// (Σ_{Γ∖e} i_Γ − Σ_{H∖e} i_Γ) / |H| as an exact rational.
inline Rational disc_valuation_exact(const RamData& rd, const Subgroup& h)
{
    if (!(h.parent() == rd.group())) throw DomainError("disc_valuation: subgroup of a different group");
    long inner = 0;
    for (auto s : h.elements())
        if (s != 0) inner += i_gamma(rd, s);
    return Rational(Integer(sum_i_gamma(rd) - inner), Integer(static_cast<long>(h.order())));
}

// v_K(disc(L/K)) for the fixed field L of H.
inline long disc_valuation(const RamData& rd, const Subgroup& h)
{
    const Rational v = disc_valuation_exact(rd, h);
    if (!v.is_integer() || v.sign() < 0)
        throw AssertionFailure("disc_valuation: quotient " + v.to_string() +
                               " is not a non-negative integer (inconsistent filtration/subgroup pairing)");
    return v.numerator().get_si();
}

// Ramification data of K'/L for the fixed field L of H: H_i = H ∩ Γ_i and
// ω restricted to the tame quotient of H.
inline RamData restrict_ramdata(const RamData& rd, const Subgroup& h)
{
    if (!(h.parent() == rd.group())) throw DomainError("restrict_ramdata: subgroup of a different group");
    const FiniteGroup& hg = h.as_group();
    std::vector<Subgroup> chain;
    for (const auto& gi : rd.wild_chain()) {
        std::vector<ElementId> local;
        for (auto s : h.elements())
            if (gi.contains(s)) local.push_back(h.local_id(s));
        chain.emplace_back(hg, std::move(local));
    }
    std::size_t wild_order = 0;
    for (auto s : h.elements())
        if (rd.wild_inertia().contains(s)) ++wild_order;
    const long n = rd.tame_order();
    const long n_h = static_cast<long>(h.order() / wild_order);
    const long step = n / n_h;
    std::vector<long> exps(h.order());
    for (std::size_t k = 0; k < h.order(); ++k) {
        const long e = rd.omega_exponent(h.parent_id(k));
        if (e % step != 0) throw AssertionFailure("restrict_ramdata: ω(H) does not lie in μ_{n_H}");
        exps[k] = e / step;
    }
    RamData out = RamData::from_exponents(hg, rd.prime(), std::move(chain), std::move(exps));
    for (std::size_t k = 1; k < h.order(); ++k)
        if (i_gamma(out, k) != i_gamma(rd, h.parent_id(k)))
            throw AssertionFailure("restrict_ramdata: i_H differs from i_Γ on H");
    return out;
}

// Artin conductor (a_Γ, χ).
inline CycloNum artin_conductor(const RamData& rd, const ClassFunction& chi)
{
    return pair(artin_character(rd), chi);
}

} // namespace ramcond
