#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ramcond/error.hpp"
#include "ramcond/rational.hpp"

namespace ramcond {

using ElementId = std::size_t;

// Finite group given by its Cayley table; element 0 is the identity.
// Cheap to copy: the table and derived data are shared and immutable.
class FiniteGroup {
public:
    enum class Structure { cyclic, product, opaque };

    FiniteGroup() : FiniteGroup(std::vector<std::vector<ElementId>>{{0}}, Structure::cyclic) {}

    // Validates the group law: closure, identity 0, inverses, associativity.
    explicit FiniteGroup(std::vector<std::vector<ElementId>> table, Structure tag = Structure::opaque)
    {
        auto d = std::make_shared<Data>();
        d->table = std::move(table);
        d->tag = tag;
        validate_and_derive(*d);
        data_ = std::move(d);
    }

    static FiniteGroup cyclic(std::size_t n)
    {
        if (n == 0) throw InvalidInput("FiniteGroup.order", "cyclic group of order 0");
        std::vector<std::vector<ElementId>> t(n, std::vector<ElementId>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
        return FiniteGroup(std::move(t), Structure::cyclic);
    }

    // Element (a, b) has id a·|H| + b.
    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h)
    {
        const std::size_t m = g.order(), n = h.order();
        std::vector<std::vector<ElementId>> t(m * n, std::vector<ElementId>(m * n));
        for (std::size_t x = 0; x < m * n; ++x)
            for (std::size_t y = 0; y < m * n; ++y)
                t[x][y] = g.mul(x / n, y / n) * n + h.mul(x % n, y % n);
        return FiniteGroup(std::move(t), Structure::product);
    }

    std::size_t order() const { return data_->table.size(); }
    Structure structure() const { return data_->tag; }
    const std::vector<std::vector<ElementId>>& table() const { return data_->table; }

    ElementId mul(ElementId a, ElementId b) const { return data_->table[a][b]; }
    ElementId inv(ElementId a) const { return data_->inverse[a]; }
    ElementId conj(ElementId t, ElementId s) const { return mul(mul(t, s), inv(t)); } // t s t⁻¹
    ElementId power(ElementId a, long k) const
    {
        const long ord = static_cast<long>(element_order(a));
        long m = ((k % ord) + ord) % ord;
        ElementId r = 0;
        for (long i = 0; i < m; ++i) r = mul(r, a);
        return r;
    }
    std::size_t element_order(ElementId a) const { return data_->orders[a]; }

    // Classes sorted by least element; each class sorted.
    const std::vector<std::vector<ElementId>>& conjugacy_classes() const { return data_->classes; }
    std::size_t class_of(ElementId a) const { return data_->class_index[a]; }

    bool is_abelian() const
    {
        for (std::size_t a = 0; a < order(); ++a)
            for (std::size_t b = 0; b < a; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    bool contains(ElementId a) const { return a < order(); }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b)
    {
        return a.data_ == b.data_ || a.data_->table == b.data_->table;
    }

private:
    struct Data {
        std::vector<std::vector<ElementId>> table;
        Structure tag = Structure::opaque;
        std::vector<ElementId> inverse;
        std::vector<std::size_t> orders;
        std::vector<std::vector<ElementId>> classes;
        std::vector<std::size_t> class_index;
    };

    static void validate_and_derive(Data& d)
    {
        const auto& t = d.table;
        const std::size_t n = t.size();
        if (n == 0) throw InvalidInput("FiniteGroup.order", "empty Cayley table");
        for (const auto& row : t) {
            if (row.size() != n) throw InvalidInput("FiniteGroup.table_shape", "Cayley table is not square");
            for (auto x : row)
                if (x >= n) throw InvalidInput("FiniteGroup.closure", "entry " + std::to_string(x) + " out of range");
        }
        for (std::size_t a = 0; a < n; ++a)
            if (t[0][a] != a || t[a][0] != a)
                throw InvalidInput("FiniteGroup.identity", "element 0 is not a two-sided identity");
        d.inverse.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b)
                if (t[a][b] == 0 && t[b][a] == 0) {
                    d.inverse[a] = b;
                    break;
                }
            if (d.inverse[a] == n)
                throw InvalidInput("FiniteGroup.inverse", "element " + std::to_string(a) + " has no two-sided inverse");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (t[t[a][b]][c] != t[a][t[b][c]])
                        throw InvalidInput("FiniteGroup.associativity", "(" + std::to_string(a) + "·" + std::to_string(b) +
                                                                            ")·" + std::to_string(c) + " differs");
        d.orders.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            std::size_t k = 1;
            for (ElementId x = a; x != 0; x = t[x][a]) ++k;
            d.orders[a] = a == 0 ? 1 : k;
        }
        d.class_index.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            if (d.class_index[a] != n) continue;
            std::set<ElementId> cls;
            for (std::size_t g = 0; g < n; ++g) cls.insert(t[t[g][a]][d.inverse[g]]);
            for (auto x : cls) d.class_index[x] = d.classes.size();
            d.classes.emplace_back(cls.begin(), cls.end());
        }
    }

    std::shared_ptr<const Data> data_;
};

// Group spec accepted by make_group.
struct GroupSpec {
    struct Cyclic {
        std::size_t n;
    };
    struct Product {
        std::vector<GroupSpec> factors;
    };
    struct Table {
        std::vector<std::vector<ElementId>> table;
    };
    std::variant<Cyclic, Product, Table> spec;
};

inline FiniteGroup make_group(const GroupSpec& s)
{
    if (auto c = std::get_if<GroupSpec::Cyclic>(&s.spec)) return FiniteGroup::cyclic(c->n);
    if (auto p = std::get_if<GroupSpec::Product>(&s.spec)) {
        if (p->factors.empty()) return FiniteGroup::cyclic(1);
        FiniteGroup g = make_group(p->factors.front());
        for (std::size_t i = 1; i < p->factors.size(); ++i) g = FiniteGroup::product(g, make_group(p->factors[i]));
        return g;
    }
    return FiniteGroup(std::get<GroupSpec::Table>(s.spec).table);
}

// Closure of a set of generators inside a finite group (a subgroup).
inline std::vector<ElementId> generated_subgroup(const FiniteGroup& g, const std::vector<ElementId>& gens)
{
    std::set<ElementId> elems{0};
    std::vector<ElementId> frontier{0};
    while (!frontier.empty()) {
        std::vector<ElementId> next;
        for (auto x : frontier)
            for (auto s : gens)
                if (elems.insert(g.mul(x, s)).second) next.push_back(g.mul(x, s));
        frontier = std::move(next);
    }
    return {elems.begin(), elems.end()};
}

// Subgroup of a parent group. The subgroup also exists as a group in its own
// right (`as_group()`), whose element k corresponds to parent id elements()[k];
// since elements are sorted, local id 0 is the identity.
class Subgroup {
public:
    Subgroup(const FiniteGroup& parent, std::vector<ElementId> elements) : parent_(parent)
    {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        for (auto e : elements)
            if (!parent.contains(e)) throw InvalidInput("Subgroup.ids", "element " + std::to_string(e) + " not in group");
        if (elements.empty() || elements.front() != 0)
            throw InvalidInput("Subgroup.identity", "subgroup must contain the identity 0");
        const std::set<ElementId> s(elements.begin(), elements.end());
        for (auto a : elements) {
            if (!s.count(parent.inv(a)))
                throw InvalidInput("Subgroup.inverse", "inverse of " + std::to_string(a) + " missing");
            for (auto b : elements)
                if (!s.count(parent.mul(a, b)))
                    throw InvalidInput("Subgroup.closure", std::to_string(a) + "·" + std::to_string(b) + " not in subset");
        }
        elements_ = std::move(elements);
        local_.assign(parent.order(), kNotMember);
        for (std::size_t k = 0; k < elements_.size(); ++k) local_[elements_[k]] = k;
        std::vector<std::vector<ElementId>> t(elements_.size(), std::vector<ElementId>(elements_.size()));
        for (std::size_t i = 0; i < elements_.size(); ++i)
            for (std::size_t j = 0; j < elements_.size(); ++j) t[i][j] = local_[parent.mul(elements_[i], elements_[j])];
        group_ = FiniteGroup(std::move(t));
    }

    static Subgroup whole(const FiniteGroup& g)
    {
        std::vector<ElementId> all(g.order());
        std::iota(all.begin(), all.end(), ElementId{0});
        return Subgroup(g, std::move(all));
    }
    static Subgroup trivial(const FiniteGroup& g) { return Subgroup(g, {0}); }

    const FiniteGroup& parent() const { return parent_; }
    const std::vector<ElementId>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t index() const { return parent_.order() / order(); }
    bool contains(ElementId a) const { return a < local_.size() && local_[a] != kNotMember; }
    ElementId local_id(ElementId parent_id) const
    {
        if (!contains(parent_id)) throw DomainError("Subgroup::local_id: element not in subgroup");
        return local_[parent_id];
    }
    ElementId parent_id(ElementId local) const { return elements_.at(local); }
    const FiniteGroup& as_group() const { return group_; }

    bool is_normal() const
    {
        for (auto s : elements_)
            for (std::size_t t = 0; t < parent_.order(); ++t)
                if (!contains(parent_.conj(t, s))) return false;
        return true;
    }

    bool is_subset_of(const Subgroup& o) const
    {
        return std::all_of(elements_.begin(), elements_.end(), [&](ElementId e) { return o.contains(e); });
    }

    // Left coset representatives t_1 = e, t_2, … with G = ⊔ t_i·H; each is the
    // least id in its coset.
    std::vector<ElementId> left_transversal() const
    {
        std::vector<ElementId> reps;
        std::vector<bool> seen(parent_.order(), false);
        for (std::size_t t = 0; t < parent_.order(); ++t) {
            if (seen[t]) continue;
            reps.push_back(t);
            for (auto h : elements_) seen[parent_.mul(t, h)] = true;
        }
        return reps;
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b)
    {
        return a.parent_ == b.parent_ && a.elements_ == b.elements_;
    }

private:
    static constexpr std::size_t kNotMember = static_cast<std::size_t>(-1);
    FiniteGroup parent_;
    std::vector<ElementId> elements_;
    std::vector<std::size_t> local_;
    FiniteGroup group_;
};

struct SubgroupReport {
    bool is_subgroup = false;
    bool is_normal = false;
    bool is_p_group = false;
    // For a normal subgroup with cyclic quotient: an element whose coset
    // generates G/H.
    std::optional<ElementId> cyclic_quotient_generator;
};

inline bool is_power_of(std::size_t n, long p)
{
    if (n == 0) return false;
    while (n % static_cast<std::size_t>(p) == 0) n /= static_cast<std::size_t>(p);
    return n == 1;
}

inline SubgroupReport subgroup_tests(const std::vector<ElementId>& ids, const FiniteGroup& g, long p)
{
    SubgroupReport rep;
    std::optional<Subgroup> h;
    try {
        h.emplace(g, ids);
    } catch (const InvalidInput&) {
        return rep;
    }
    rep.is_subgroup = true;
    rep.is_normal = h->is_normal();
    rep.is_p_group = is_power_of(h->order(), p);
    if (!rep.is_normal) return rep;
    const std::size_t idx = h->index();
    // smallest coset representative of order idx in G/H
    for (std::size_t t = 0; t < g.order(); ++t) {
        std::size_t k = 1;
        ElementId x = t;
        while (!h->contains(x)) {
            x = g.mul(x, t);
            ++k;
        }
        if (k == idx) {
            rep.cyclic_quotient_generator = t;
            break;
        }
    }
    return rep;
}

// Every subgroup of g (|g| small), sorted by (order, elements).
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g)
{
    std::set<std::vector<ElementId>> found{{0}};
    std::vector<std::vector<ElementId>> frontier{{0}};
    while (!frontier.empty()) {
        std::vector<std::vector<ElementId>> next;
        for (const auto& h : frontier)
            for (std::size_t x = 0; x < g.order(); ++x) {
                if (std::binary_search(h.begin(), h.end(), x)) continue;
                auto gens = h;
                gens.push_back(x);
                auto s = generated_subgroup(g, gens);
                if (found.insert(s).second) next.push_back(std::move(s));
            }
        frontier = std::move(next);
    }
    std::vector<std::vector<ElementId>> sorted(found.begin(), found.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<Subgroup> out;
    for (auto& s : sorted) out.emplace_back(g, std::move(s));
    return out;
}

} // namespace ramcond
