#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ramcond/cyclotomic.hpp"
#include "ramcond/group.hpp"
#include "ramcond/matrix.hpp"

namespace ramcond {

// Cyclotomic-valued function on a finite group, constant on conjugacy
// classes. All values are held at the common level N.
class ClassFunction {
public:
    ClassFunction(FiniteGroup group, std::vector<CycloNum> values) : group_(std::move(group))
    {
        if (values.size() != group_.order())
            throw InvalidInput("ClassFunction.size", "expected " + std::to_string(group_.order()) + " values, got " +
                                                         std::to_string(values.size()));
        level_ = 1;
        for (const auto& v : values) level_ = static_cast<unsigned>(lcm(level_, v.level()));
        for (auto& v : values) v = v.embed(level_);
        for (const auto& cls : group_.conjugacy_classes())
            for (auto s : cls)
                if (!(values[s] == values[cls.front()]))
                    throw InvalidInput("ClassFunction.class_invariance",
                                       "value at " + std::to_string(s) + " differs from value at " +
                                           std::to_string(cls.front()));
        values_ = std::move(values);
    }

    static ClassFunction constant(const FiniteGroup& g, const CycloNum& c)
    {
        return ClassFunction(g, std::vector<CycloNum>(g.order(), c));
    }
    static ClassFunction trivial(const FiniteGroup& g) { return constant(g, CycloNum(1)); }
    static ClassFunction regular(const FiniteGroup& g)
    {
        std::vector<CycloNum> v(g.order(), CycloNum(0));
        v[0] = CycloNum(static_cast<long>(g.order()));
        return ClassFunction(g, std::move(v));
    }

    const FiniteGroup& group() const { return group_; }
    unsigned level() const { return level_; }
    const std::vector<CycloNum>& values() const { return values_; }
    const CycloNum& operator()(ElementId s) const { return values_.at(s); }

    bool is_rational() const
    {
        for (const auto& v : values_)
            if (!v.rational_part()) return false;
        return true;
    }

    friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b)
    {
        a.require_same_group(b, "operator+");
        std::vector<CycloNum> v(a.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
        return ClassFunction(a.group_, std::move(v));
    }
    friend ClassFunction operator-(const ClassFunction& a, const ClassFunction& b)
    {
        a.require_same_group(b, "operator-");
        std::vector<CycloNum> v(a.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
        return ClassFunction(a.group_, std::move(v));
    }
    friend ClassFunction operator*(const CycloNum& c, const ClassFunction& f)
    {
        std::vector<CycloNum> v(f.values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * f.values_[i];
        return ClassFunction(f.group_, std::move(v));
    }
    friend bool operator==(const ClassFunction& a, const ClassFunction& b)
    {
        if (!(a.group_ == b.group_)) return false;
        for (std::size_t i = 0; i < a.values_.size(); ++i)
            if (!(a.values_[i] == b.values_[i])) return false;
        return true;
    }

    void require_same_group(const ClassFunction& o, const char* op) const
    {
        if (!(group_ == o.group_)) throw DomainError(std::string("ClassFunction::") + op + ": group mismatch");
    }

private:
    FiniteGroup group_;
    unsigned level_ = 1;
    std::vector<CycloNum> values_;
};

// (f, g) = |Γ|⁻¹ Σ_s f(s)·g(s⁻¹), with no complex conjugation.
inline CycloNum pair(const ClassFunction& f, const ClassFunction& g)
{
    f.require_same_group(g, "pair");
    const auto& G = f.group();
    CycloNum sum = CycloNum::zero_at(static_cast<unsigned>(lcm(f.level(), g.level())));
    for (std::size_t s = 0; s < G.order(); ++s) sum += f(s) * g(G.inv(s));
    return sum / CycloNum(static_cast<long>(G.order()));
}

inline ClassFunction conjugate(const ClassFunction& f)
{
    std::vector<CycloNum> v;
    v.reserve(f.values().size());
    for (const auto& x : f.values()) v.push_back(x.conjugate());
    return ClassFunction(f.group(), std::move(v));
}

// (Ind f)(s) = |H|⁻¹ Σ_{t ∈ G, t s t⁻¹ ∈ H} f(t s t⁻¹), for f on H.as_group().
inline ClassFunction induce(const ClassFunction& f, const Subgroup& h)
{
    if (!(f.group() == h.as_group())) throw DomainError("induce: class function does not live on the subgroup");
    const auto& G = h.parent();
    std::vector<CycloNum> v(G.order(), CycloNum::zero_at(f.level()));
    for (std::size_t s = 0; s < G.order(); ++s) {
        for (std::size_t t = 0; t < G.order(); ++t) {
            const ElementId c = G.conj(t, s);
            if (h.contains(c)) v[s] += f(h.local_id(c));
        }
        v[s] /= CycloNum(static_cast<long>(h.order()));
    }
    return ClassFunction(G, std::move(v));
}

inline ClassFunction restrict(const ClassFunction& f, const Subgroup& h)
{
    if (!(f.group() == h.parent())) throw DomainError("restrict: class function does not live on the parent group");
    std::vector<CycloNum> v;
    v.reserve(h.order());
    for (auto s : h.elements()) v.push_back(f(s));
    return ClassFunction(h.as_group(), std::move(v));
}

// s ↦ trace ρ(s), after checking ρ(e) = 1 and ρ(g)ρ(h) = ρ(gh).
template <typename T>
ClassFunction char_of_rep(const FiniteGroup& g, const std::vector<Matrix<T>>& rep)
{
    if (rep.size() != g.order()) throw InvalidInput("Representation.size", "need one matrix per group element");
    const std::size_t d = rep[0].rows();
    for (const auto& m : rep)
        if (m.rows() != d || m.cols() != d) throw InvalidInput("Representation.shape", "matrices must be d×d");
    if (!(rep[0] == Matrix<T>::identity(d))) throw InvalidInput("Representation.identity", "ρ(e) is not the identity");
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (!(rep[a] * rep[b] == rep[g.mul(a, b)]))
                throw InvalidInput("Representation.homomorphism",
                                   "ρ(" + std::to_string(a) + ")ρ(" + std::to_string(b) + ") ≠ ρ(" +
                                       std::to_string(g.mul(a, b)) + ")");
    std::vector<CycloNum> v;
    v.reserve(g.order());
    for (const auto& m : rep) v.push_back(CycloNum(m.trace()));
    return ClassFunction(g, std::move(v));
}

} // namespace ramcond
