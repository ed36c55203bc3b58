#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramcond/group.hpp"
#include "ramcond/rational.hpp"

namespace ramcond {

// R[[S_1..S_m]]⟨T_1..T_n⟩ over R = Z_p, truncated at total degree D.
struct SeriesRingSpec {
    long p = 2;
    std::vector<std::string> s_vars;
    std::vector<std::string> t_vars;
    unsigned degree_cap = 16;

    SeriesRingSpec() = default;
    SeriesRingSpec(long prime, std::vector<std::string> s, std::vector<std::string> t, unsigned cap)
        : p(prime), s_vars(std::move(s)), t_vars(std::move(t)), degree_cap(cap)
    {
        validate();
    }

    void validate() const
    {
        if (!is_prime(p)) throw InvalidInput("SeriesRing.prime", std::to_string(p) + " is not prime");
        if (degree_cap < 1) throw InvalidInput("SeriesRing.degree_cap", "degree cap must be at least 1");
        std::set<std::string> seen;
        for (const auto& v : variables()) {
            const bool ident = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_') &&
                               std::all_of(v.begin(), v.end(), [](char c) {
                                   return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                               });
            if (!ident || v == "p") throw InvalidInput("SeriesRing.variable_name", "invalid variable name '" + v + "'");
            if (!seen.insert(v).second) throw InvalidInput("SeriesRing.distinct_variables", "variable '" + v + "' repeats");
        }
    }

    // S-block first, then T-block.
    std::vector<std::string> variables() const
    {
        std::vector<std::string> all = s_vars;
        all.insert(all.end(), t_vars.begin(), t_vars.end());
        return all;
    }
    std::size_t arity() const { return s_vars.size() + t_vars.size(); }

    std::optional<std::size_t> index_of(const std::string& name) const
    {
        const auto all = variables();
        const auto it = std::find(all.begin(), all.end(), name);
        if (it == all.end()) return std::nullopt;
        return static_cast<std::size_t>(it - all.begin());
    }

    bool is_s_variable(std::size_t i) const { return i < s_vars.size(); }

    friend bool operator==(const SeriesRingSpec&, const SeriesRingSpec&) = default;
};

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e)
{
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

// Truncated element of R[[S]]⟨T⟩ ⊗ K: exact rational coefficients on all
// monomials of total degree ≤ D; higher terms are unknown and discarded.
class MixedSeries {
public:
    explicit MixedSeries(SeriesRingSpec ring) : ring_(std::move(ring)) {}

    static MixedSeries constant(const SeriesRingSpec& ring, const Rational& c)
    {
        return monomial(ring, Exponent(ring.arity(), 0), c);
    }

    static MixedSeries variable(const SeriesRingSpec& ring, const std::string& name)
    {
        const auto i = ring.index_of(name);
        if (!i) throw DomainError("MixedSeries: unknown variable '" + name + "'");
        Exponent e(ring.arity(), 0);
        e[*i] = 1;
        return monomial(ring, e, Rational(1));
    }

    static MixedSeries monomial(const SeriesRingSpec& ring, Exponent e, const Rational& c)
    {
        if (e.size() != ring.arity()) throw DomainError("MixedSeries: exponent has the wrong length");
        MixedSeries f(ring);
        if (!c.is_zero() && total_degree(e) <= ring.degree_cap) f.c_.emplace(std::move(e), c);
        return f;
    }

    const SeriesRingSpec& ring() const { return ring_; }
    const std::map<Exponent, Rational>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Rational coeff(const Exponent& e) const
    {
        const auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coeff(Exponent(ring_.arity(), 0)); }

    // Largest total degree present, or -1 for zero.
    long degree() const
    {
        long d = -1;
        for (const auto& [e, c] : c_) d = std::max<long>(d, total_degree(e));
        return d;
    }

    MixedSeries& operator+=(const MixedSeries& o)
    {
        require_same_ring(o, "+");
        for (const auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    MixedSeries& operator-=(const MixedSeries& o)
    {
        require_same_ring(o, "-");
        for (const auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend MixedSeries operator+(MixedSeries a, const MixedSeries& b) { return a += b; }
    friend MixedSeries operator-(MixedSeries a, const MixedSeries& b) { return a -= b; }
    friend MixedSeries operator-(MixedSeries a)
    {
        for (auto& [e, c] : a.c_) c = -c;
        return a;
    }

    friend MixedSeries operator*(const Rational& s, MixedSeries a)
    {
        if (s.is_zero()) return MixedSeries(a.ring_);
        for (auto& [e, c] : a.c_) c *= s;
        return a;
    }

    friend MixedSeries operator*(const MixedSeries& a, const MixedSeries& b)
    {
        a.require_same_ring(b, "*");
        MixedSeries out(a.ring_);
        const unsigned cap = a.ring_.degree_cap;
        Exponent sum(a.ring_.arity());
        for (const auto& [ea, ca] : a.c_) {
            const unsigned da = total_degree(ea);
            for (const auto& [eb, cb] : b.c_) {
                if (da + total_degree(eb) > cap) continue;
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
                out.add_term(sum, ca * cb);
            }
        }
        return out;
    }
    MixedSeries& operator*=(const MixedSeries& o) { return *this = *this * o; }

    MixedSeries pow(unsigned k) const
    {
        MixedSeries result = constant(ring_, Rational(1)), base = *this;
        while (k) {
            if (k & 1u) result *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return result;
    }

    friend bool operator==(const MixedSeries& a, const MixedSeries& b) { return a.ring_ == b.ring_ && a.c_ == b.c_; }

    // Terms with total degree ≤ d.
    MixedSeries truncated(unsigned d) const
    {
        MixedSeries out(ring_);
        for (const auto& [e, c] : c_)
            if (total_degree(e) <= d) out.c_.emplace(e, c);
        return out;
    }

    // Same coefficients in a ring with a different degree cap.
    MixedSeries with_cap(unsigned cap) const
    {
        SeriesRingSpec r = ring_;
        r.degree_cap = cap;
        MixedSeries out(r);
        for (const auto& [e, c] : c_)
            if (total_degree(e) <= cap) out.c_.emplace(e, c);
        return out;
    }

    // Polynomial notation, highest total degree first, e.g. "Z^2 - 2", "1/9*S + 3*T".
    std::string to_string() const
    {
        if (c_.empty()) return "0";
        std::vector<std::pair<Exponent, Rational>> list(c_.begin(), c_.end());
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            const auto da = total_degree(a.first), db = total_degree(b.first);
            if (da != db) return da > db;
            return a.first > b.first;
        });
        const auto names = ring_.variables();
        std::string out;
        for (const auto& [e, c] : list) {
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            const Rational mag = abs(c);
            std::string body;
            if (mono.empty())
                body = mag.to_string();
            else if (mag == Rational(1))
                body = mono;
            else
                body = mag.to_string() + "*" + mono;
            if (out.empty())
                out = (c.sign() < 0 ? "-" : "") + body;
            else
                out += (c.sign() < 0 ? " - " : " + ") + body;
        }
        return out;
    }

private:
    void add_term(const Exponent& e, const Rational& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = c_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    void require_same_ring(const MixedSeries& o, const char* op) const
    {
        if (!(ring_ == o.ring_)) throw DomainError(std::string("MixedSeries ") + op + ": ring mismatch");
    }

    SeriesRingSpec ring_;
    std::map<Exponent, Rational> c_;
};

// ν(f) = min v_p over the coefficients; +∞ for f = 0.
inline Valuation gauss_valuation(const MixedSeries& f)
{
    Valuation v = Valuation::infinity();
    for (const auto& [e, c] : f.terms()) v = min(v, p_valuation(c, f.ring().p));
    return v;
}

inline bool is_lattice_member(const MixedSeries& f) { return gauss_valuation(f) >= Valuation(0); }

// Membership in the completion of A[I^{n+1}/p], A = R[[S]], I = (p, S).
inline bool dilatation_member(const MixedSeries& f, unsigned n)
{
    if (!f.ring().t_vars.empty()) throw DomainError("dilatation_member: ring must have S-variables only");
    for (const auto& [e, c] : f.terms()) {
        const long bound = -static_cast<long>(total_degree(e) / (n + 1));
        if (p_valuation(c, f.ring().p) < Valuation(bound)) return false;
    }
    return true;
}

// f(images) where images live in `target`. Images must have zero constant
// term, so the result is exact up to the target's degree cap.
inline MixedSeries compose(const MixedSeries& f, const std::vector<MixedSeries>& images, const SeriesRingSpec& target)
{
    if (images.size() != f.ring().arity()) throw DomainError("compose: need one image per variable");
    for (const auto& g : images) {
        if (!(g.ring() == target)) throw DomainError("compose: image in the wrong ring");
        if (!g.constant_term().is_zero()) throw DomainError("compose: images must have zero constant term");
    }
    std::vector<std::vector<MixedSeries>> powers(images.size());
    auto power = [&](std::size_t i, unsigned k) -> const MixedSeries& {
        auto& ps = powers[i];
        if (ps.empty()) ps.push_back(MixedSeries::constant(target, Rational(1)));
        while (ps.size() <= k) ps.push_back(ps.back() * images[i]);
        return ps[k];
    };
    MixedSeries out(target);
    for (const auto& [e, c] : f.terms()) {
        if (total_degree(e) > target.degree_cap) continue;
        MixedSeries term = MixedSeries::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) term *= power(i, e[i]);
        out += term;
    }
    return out;
}

struct Distinguished {
    bool distinguished = false;
    std::optional<unsigned> residual_order;
};

// Reduction of f modulo (p, all variables other than z) in κ[[z]].
inline Distinguished is_distinguished(const MixedSeries& f, const std::string& z)
{
    const auto& ring = f.ring();
    const auto zi = ring.index_of(z);
    if (!zi) throw DomainError("is_distinguished: unknown variable '" + z + "'");
    for (std::size_t i = 0; i < ring.arity(); ++i)
        if (i != *zi && !ring.is_s_variable(i))
            throw DomainError("is_distinguished: variable '" + ring.variables()[i] +
                              "' is not in the maximal-ideal block");
    if (!is_lattice_member(f)) return {};
    std::optional<unsigned> order;
    for (const auto& [e, c] : f.terms()) {
        bool pure = true;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (i != *zi && e[i]) pure = false;
        if (!pure || p_valuation(c, ring.p) != Valuation(0)) continue;
        if (!order || e[*zi] < *order) order = e[*zi];
    }
    if (!order || *order == 0) return {};
    return {true, order};
}

struct WeierstrassOptions {
    long precision = 32; // stop once the correction has ν ≥ precision
};

struct WeierstrassResult {
    MixedSeries quotient;
    MixedSeries remainder;
    unsigned residual_order = 0;
    unsigned certified_degree = 0; // q·f + r ≡ g modulo terms of total degree > this
    long precision = 0;
    bool exact = false;            // true: no p-adic error term at all
    Valuation residual_valuation;  // ν(g − q·f − r) within the window
};

namespace detail {

inline unsigned z_exponent(const Exponent& e, std::size_t zi) { return e[zi]; }

// Inverse of a series with p-unit constant term, exact up to the cap.
inline MixedSeries unit_inverse(const MixedSeries& u)
{
    const Rational u0 = u.constant_term();
    const MixedSeries w = u0.inverse() * u - MixedSeries::constant(u.ring(), Rational(1));
    MixedSeries sum = MixedSeries::constant(u.ring(), Rational(1)), term = sum;
    for (unsigned k = 1; k <= u.ring().degree_cap; ++k) {
        term = -(term * w);
        if (term.is_zero()) break;
        sum += term;
    }
    return u0.inverse() * sum;
}

} // namespace detail

// g = q·f + r with deg_z r < n, by successive approximation.
inline WeierstrassResult weierstrass_divide(const MixedSeries& g, const MixedSeries& f, const std::string& z,
                                            WeierstrassOptions opts = {})
{
    if (!(g.ring() == f.ring())) throw DomainError("weierstrass_divide: ring mismatch");
    const auto d = is_distinguished(f, z);
    if (!d.distinguished)
        throw InvalidInput("Weierstrass.distinguished", "divisor " + f.to_string() + " is not distinguished in " + z +
                                                            " within degree " +
                                                            std::to_string(f.ring().degree_cap));
    const SeriesRingSpec& ring = f.ring();
    const std::size_t zi = *ring.index_of(z);
    const unsigned n = *d.residual_order;

    auto split = [&](const MixedSeries& h, MixedSeries& low, MixedSeries& high_over_zn) {
        low = MixedSeries(ring);
        high_over_zn = MixedSeries(ring);
        for (const auto& [e, c] : h.terms()) {
            if (detail::z_exponent(e, zi) < n) {
                low += MixedSeries::monomial(ring, e, c);
            } else {
                Exponent s = e;
                s[zi] -= n;
                high_over_zn += MixedSeries::monomial(ring, s, c);
            }
        }
    };

    MixedSeries f_low(ring), u(ring);
    split(f, f_low, u);
    const MixedSeries u_inv = detail::unit_inverse(u);

    WeierstrassResult res{MixedSeries(ring), MixedSeries(ring), n, ring.degree_cap, opts.precision, false,
                          Valuation::infinity()};
    const Valuation vg = gauss_valuation(g);
    const long start = vg.is_finite() ? vg.value() : 0;
    const long budget = (static_cast<long>(ring.degree_cap) + 1) * (std::max(opts.precision - start, 0L) + 2) + 10;
    MixedSeries h = g, h_low(ring), big_h(ring);
    for (long it = 0;; ++it) {
        split(h, h_low, big_h);
        if (big_h.is_zero()) {
            res.exact = true;
            break;
        }
        const Valuation vh = gauss_valuation(big_h);
        if (vh >= Valuation(opts.precision)) {
            res.residual_valuation = vh;
            break;
        }
        if (it >= budget)
            throw AssertionFailure("weierstrass_divide: no convergence after " + std::to_string(budget) +
                                   " iterations (residual valuation " + vh.to_string() + ")");
        const MixedSeries c = big_h * u_inv;
        res.quotient += c;
        h = h_low - c * f_low;
    }
    res.remainder = h_low;
    return res;
}

// [r](T) = (1 + T)^r − 1 = Σ_{k≥1} C(r, k) T^k, for r ∈ Z_(p).
inline MixedSeries mult_endo(const Rational& r, const SeriesRingSpec& ring)
{
    if (ring.arity() != 1) throw DomainError("mult_endo: ring must have exactly one variable");
    if (!is_p_integral(r, ring.p))
        throw InvalidInput("Endomorphism.p_integral", r.to_string() + " is not a " + std::to_string(ring.p) + "-adic integer");
    MixedSeries out(ring);
    Rational binom(1);
    for (unsigned k = 1; k <= ring.degree_cap; ++k) {
        binom = binom * (r - Rational(static_cast<long>(k) - 1)) / Rational(static_cast<long>(k));
        if (!is_p_integral(binom, ring.p))
            throw AssertionFailure("mult_endo: C(" + r.to_string() + ", " + std::to_string(k) + ") is not p-integral");
        out += MixedSeries::monomial(ring, Exponent{k}, binom);
    }
    return out;
}

// The r with e = [r] within the window, if any.
inline std::optional<Rational> endo_to_scalar(const MixedSeries& e)
{
    if (e.ring().arity() != 1) throw DomainError("endo_to_scalar: ring must have exactly one variable");
    if (!e.constant_term().is_zero()) throw DomainError("endo_to_scalar: nonzero constant term");
    const Rational r = e.coeff(Exponent{1});
    if (!is_p_integral(r, e.ring().p)) return std::nullopt;
    if (mult_endo(r, e.ring()) == e) return r;
    return std::nullopt;
}

// F(X, Y) = X + Y + XY in a two-variable ring.
inline MixedSeries multiplicative_law(const SeriesRingSpec& ring)
{
    if (ring.arity() != 2) throw DomainError("multiplicative_law: ring must have exactly two variables");
    const auto vars = ring.variables();
    const auto x = MixedSeries::variable(ring, vars[0]), y = MixedSeries::variable(ring, vars[1]);
    return x + y + x * y;
}

// A group action by substitutions: action[g][i] is the image of variable i
// under g.
using SubstitutionAction = std::vector<std::vector<MixedSeries>>;

// For each variable s_i, the elementary symmetric polynomials u_{i,1..|G|}
// of the orbit multiset {γ(s_i) : γ ∈ G}.
inline std::vector<std::vector<MixedSeries>> symmetric_descent(const SeriesRingSpec& ring, const FiniteGroup& g,
                                                               const SubstitutionAction& action)
{
    const std::size_t m = ring.arity();
    if (action.size() != g.order()) throw InvalidInput("Descent.action_size", "need one substitution per group element");
    for (const auto& sub : action) {
        if (sub.size() != m) throw InvalidInput("Descent.substitution_size", "need one image per variable");
        for (const auto& x : sub) {
            if (!(x.ring() == ring)) throw InvalidInput("Descent.ring", "substitution image in the wrong ring");
            if (!x.constant_term().is_zero())
                throw InvalidInput("Descent.constant_term", "substitution images must have zero constant term");
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        if (!(action[0][i] == MixedSeries::variable(ring, ring.variables()[i])))
            throw InvalidInput("Descent.identity", "the identity must act trivially");
    // Either g ↦ σ_g or g ↦ σ_g⁻¹ may be a homomorphism (left or right action).
    auto holds = [&](bool left) {
        for (std::size_t a = 0; a < g.order(); ++a)
            for (std::size_t b = 0; b < g.order(); ++b) {
                const ElementId ab = left ? g.mul(a, b) : g.mul(b, a);
                for (std::size_t i = 0; i < m; ++i)
                    if (!(compose(action[b][i], action[a], ring) == action[ab][i])) return false;
            }
        return true;
    };
    if (!holds(true) && !holds(false))
        throw InvalidInput("Descent.homomorphism", "substitutions do not compose like the group law within the window");

    std::vector<std::vector<MixedSeries>> out;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<MixedSeries> e(g.order() + 1, MixedSeries(ring));
        e[0] = MixedSeries::constant(ring, Rational(1));
        for (std::size_t s = 0; s < g.order(); ++s)
            for (std::size_t k = s + 1; k >= 1; --k) e[k] += action[s][i] * e[k - 1];
        out.emplace_back(e.begin() + 1, e.end());
    }
    for (const auto& sub : action)
        for (const auto& us : out)
            for (const auto& u : us)
                if (!(compose(u, sub, ring) == u))
                    throw AssertionFailure("symmetric_descent: output " + u.to_string() + " is not invariant");
    return out;
}

} // namespace ramcond
