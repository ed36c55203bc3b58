#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramcond/class_function.hpp"
#include "ramcond/matrix.hpp"
#include "ramcond/ramification.hpp"

namespace ramcond {

// Character group X*(G) of a strongly concordant group: a finite free
// Z_p-module of rank d, presented exactly by p-integral rational matrices
// ρ(g) for every element g of Γ.
class CharModule {
public:
    CharModule(std::string name, FiniteGroup group, long p, std::vector<QMatrix> action)
        : name_(std::move(name)), group_(std::move(group)), p_(p), action_(std::move(action))
    {
        if (!is_prime(p_)) throw InvalidInput("CharModule.prime", std::to_string(p_) + " is not prime");
        if (action_.size() != group_.order())
            throw InvalidInput("CharModule.action_size", "need one matrix per group element");
        rank_ = action_[0].rows();
        for (std::size_t g = 0; g < action_.size(); ++g) {
            const auto& m = action_[g];
            if (m.rows() != rank_ || m.cols() != rank_)
                throw InvalidInput("CharModule.shape", "ρ(" + std::to_string(g) + ") is not " + std::to_string(rank_) +
                                                           "×" + std::to_string(rank_));
            if (!linalg::is_p_integral(m, p_))
                throw InvalidInput("CharModule.p_integral", "ρ(" + std::to_string(g) + ") has an entry with negative " +
                                                                "p-valuation");
            if (rank_ > 0 && p_valuation(linalg::determinant(m), p_) != Valuation(0))
                throw InvalidInput("CharModule.automorphism", "det ρ(" + std::to_string(g) + ") is not a p-adic unit");
        }
        if (!(action_[0] == QMatrix::identity(rank_)))
            throw InvalidInput("CharModule.identity", "ρ(e) is not the identity");
        for (std::size_t a = 0; a < group_.order(); ++a)
            for (std::size_t b = 0; b < group_.order(); ++b)
                if (!(action_[a] * action_[b] == action_[group_.mul(a, b)]))
                    throw InvalidInput("CharModule.homomorphism", "ρ(" + std::to_string(a) + ")ρ(" + std::to_string(b) +
                                                                      ") ≠ ρ(" + std::to_string(group_.mul(a, b)) + ")");
    }

    // Extends matrices given on generators to the whole group by
    // ρ(x·s) = ρ(x)ρ(s); inconsistent relations fail the homomorphism check.
    static CharModule from_generators(std::string name, const FiniteGroup& g, long p, std::size_t rank,
                                      const std::vector<std::pair<ElementId, QMatrix>>& gens)
    {
        std::vector<std::optional<QMatrix>> rho(g.order());
        rho[0] = QMatrix::identity(rank);
        for (const auto& [s, m] : gens) {
            if (!g.contains(s)) throw InvalidInput("CharModule.generator", "generator id out of range");
            if (m.rows() != rank || m.cols() != rank)
                throw InvalidInput("CharModule.shape", "generator matrix has the wrong size");
        }
        std::deque<ElementId> queue{0};
        while (!queue.empty()) {
            const ElementId x = queue.front();
            queue.pop_front();
            for (const auto& [s, m] : gens) {
                const ElementId y = g.mul(x, s);
                if (rho[y]) continue;
                rho[y] = *rho[x] * m;
                queue.push_back(y);
            }
        }
        std::vector<QMatrix> action;
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (!rho[x]) throw InvalidInput("CharModule.generators", "generators do not generate the group");
            action.push_back(*rho[x]);
        }
        return CharModule(std::move(name), g, p, std::move(action));
    }

    static CharModule trivial(const FiniteGroup& g, long p, std::size_t d, std::string name = "")
    {
        if (name.empty()) name = "trivial:" + std::to_string(d);
        return CharModule(std::move(name), g, p, std::vector<QMatrix>(g.order(), QMatrix::identity(d)));
    }

    // ρ(g)·e_h = e_{gh}.
    static CharModule regular(const FiniteGroup& g, long p, std::string name = "regular")
    {
        std::vector<QMatrix> action;
        const std::size_t n = g.order();
        for (std::size_t a = 0; a < n; ++a) {
            QMatrix m(n, n);
            for (std::size_t h = 0; h < n; ++h) m(g.mul(a, h), h) = 1;
            action.push_back(std::move(m));
        }
        return CharModule(std::move(name), g, p, std::move(action));
    }

    const std::string& name() const { return name_; }
    const FiniteGroup& group() const { return group_; }
    long prime() const { return p_; }
    std::size_t rank() const { return rank_; }
    const std::vector<QMatrix>& action() const { return action_; }
    const QMatrix& rho(ElementId g) const { return action_.at(g); }

    bool has_integer_entries() const
    {
        for (const auto& m : action_)
            if (!linalg::is_integral(m)) return false;
        return true;
    }

    // The homomorphism property was checked at construction.
    ClassFunction character() const
    {
        std::vector<CycloNum> v;
        v.reserve(action_.size());
        for (const auto& m : action_) v.emplace_back(rank_ ? m.trace() : Rational(0));
        return ClassFunction(group_, std::move(v));
    }

    CharModule renamed(std::string name) const
    {
        CharModule m = *this;
        m.name_ = std::move(name);
        return m;
    }

private:
    std::string name_;
    FiniteGroup group_;
    long p_;
    std::size_t rank_ = 0;
    std::vector<QMatrix> action_;
};

// Base change conductor; value · denominator_bound is an integer.
struct Conductor {
    Rational value;
    std::size_t denominator_bound = 1;

    friend bool operator==(const Conductor& a, const Conductor& b) { return a.value == b.value; }
};

// c(G, K) = (bA_Γ, χ_G).
inline Conductor conductor(const CharModule& m, const RamData& rd)
{
    if (!(m.group() == rd.group())) throw DomainError("conductor: module and ramification data are on different groups");
    if (m.prime() != rd.prime()) throw DomainError("conductor: module and ramification data use different primes");
    const CycloNum c = pair(bisection(rd), m.character());
    const auto r = c.rational_part();
    if (!r)
        throw AssertionFailure("conductor of " + m.name() + ": pairing " + c.to_string() +
                               " is not rational (inconsistent ω/representation input)");
    const std::size_t e = rd.group().order();
    if (r->sign() < 0)
        throw AssertionFailure("conductor of " + m.name() + ": negative value " + r->to_string());
    if (!(*r * Rational(static_cast<long>(e))).is_integer())
        throw AssertionFailure("conductor of " + m.name() + ": " + r->to_string() + " · " + std::to_string(e) +
                               " is not an integer");
    return Conductor{*r, e};
}

inline CharModule direct_sum(const CharModule& a, const CharModule& b)
{
    if (!(a.group() == b.group())) throw DomainError("direct_sum: group mismatch");
    if (a.prime() != b.prime()) throw DomainError("direct_sum: prime mismatch");
    std::vector<QMatrix> action;
    for (std::size_t g = 0; g < a.group().order(); ++g) action.push_back(block_diagonal(a.rho(g), b.rho(g)));
    return CharModule(a.name() + "⊕" + b.name(), a.group(), a.prime(), std::move(action));
}

inline bool is_isogenous(const CharModule& a, const CharModule& b)
{
    if (!(a.group() == b.group())) throw DomainError("is_isogenous: group mismatch");
    return a.rank() == b.rank() && a.character() == b.character();
}

// Ind_H^G M_L = M_L ⊗_{Z_p[H]} Z_p[G], as block matrices over the left
// transversal t_1 = e, t_2, …: g·(t_i ⊗ m) = t_j ⊗ h·m where g t_i = t_j h.
inline CharModule weil_restriction(const CharModule& m, const Subgroup& h)
{
    if (!(m.group() == h.as_group())) throw DomainError("weil_restriction: module is not defined on the subgroup");
    const FiniteGroup& g = h.parent();
    const auto reps = h.left_transversal();
    const std::size_t k = reps.size(), d = m.rank();
    std::vector<QMatrix> action;
    for (std::size_t x = 0; x < g.order(); ++x) {
        QMatrix big(k * d, k * d);
        for (std::size_t i = 0; i < k; ++i) {
            const ElementId xt = g.mul(x, reps[i]);
            std::size_t j = 0;
            while (!h.contains(g.mul(g.inv(reps[j]), xt))) ++j;
            const QMatrix& blk = m.rho(h.local_id(g.mul(g.inv(reps[j]), xt)));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) big(j * d + r, i * d + c) = blk(r, c);
        }
        action.push_back(std::move(big));
    }
    CharModule out("Res(" + m.name() + ")", g, m.prime(), std::move(action));
    if (!(out.character() == induce(m.character(), h)))
        throw AssertionFailure("weil_restriction: character differs from the induced character");
    return out;
}

// c(Res_{L/K} G_L, K) = c(G_L, L) + ½ v_K(disc(L/K)) dim(G_L).
inline Conductor conductor_via_induction(const CharModule& m, const RamData& rd, const Subgroup& h)
{
    const Conductor over_l = conductor(m, restrict_ramdata(rd, h));
    const Rational half(Integer(1), Integer(2));
    const Rational value =
        over_l.value + half * Rational(disc_valuation(rd, h)) * Rational(static_cast<long>(m.rank()));
    return Conductor{value, rd.group().order()};
}

namespace detail {

inline void require_idempotent(const CharModule& m, const QMatrix& e, std::optional<unsigned> modulo_power)
{
    const long p = m.prime();
    if (e.rows() != m.rank() || e.cols() != m.rank())
        throw InvalidInput("Idempotent.shape", "E must be " + std::to_string(m.rank()) + "×" + std::to_string(m.rank()));
    if (!linalg::is_p_integral(e, p)) throw InvalidInput("Idempotent.p_integral", "E is not p-integral");
    auto vanishes = [&](const QMatrix& x) {
        const Valuation v = linalg::matrix_p_valuation(x, p);
        return modulo_power ? v >= Valuation(static_cast<long>(*modulo_power)) : v.is_infinite();
    };
    if (!vanishes(e * e - e)) throw InvalidInput("Idempotent.idempotent", "E² ≠ E");
    for (std::size_t g = 0; g < m.group().order(); ++g)
        if (!vanishes(e * m.rho(g) - m.rho(g) * e))
            throw InvalidInput("Idempotent.equivariant", "E does not commute with ρ(" + std::to_string(g) + ")");
}

// The Γ-action restricted to the lattice with Z_(p)-basis `basis`.
inline CharModule restrict_to_lattice(const CharModule& m, const QMatrix& basis, std::string name)
{
    std::vector<QMatrix> action;
    for (const auto& r : m.action()) {
        QMatrix a = basis.cols() ? linalg::solve_left_factor(basis, r * basis) : QMatrix(0, 0);
        if (!linalg::is_p_integral(a, m.prime()))
            throw AssertionFailure("split_idempotent: sublattice is not Γ-stable over Z_(p)");
        action.push_back(std::move(a));
    }
    return CharModule(std::move(name), m.group(), m.prime(), std::move(action));
}

inline std::size_t rank_mod_p(const QMatrix& m, long p)
{
    const Integer pp(p);
    std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = residue_mod(m(i, j), pp);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && a[piv][c] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[r]);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), a[r][c].get_mpz_t(), pp.get_mpz_t());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Integer f = (a[i][c] * inv) % pp;
            for (std::size_t k = 0; k < m.cols(); ++k) {
                a[i][k] = (a[i][k] - f * a[r][k]) % pp;
                if (a[i][k] < 0) a[i][k] += pp;
            }
        }
        ++r;
    }
    return r;
}

} // namespace detail

struct IdempotentSplit {
    CharModule image;  // saturated lattice E·Z_p^d
    CharModule kernel; // saturated lattice (1 − E)·Z_p^d
};

// Karoubi splitting of M along a p-integral equivariant idempotent E.
inline IdempotentSplit split_idempotent(const CharModule& m, const QMatrix& e)
{
    detail::require_idempotent(m, e, std::nullopt);
    const QMatrix plus = linalg::p_local_basis(e, m.prime());
    const QMatrix minus = linalg::p_local_basis(QMatrix::identity(m.rank()) - e, m.prime());
    if (plus.cols() + minus.cols() != m.rank()) throw AssertionFailure("split_idempotent: ranks do not add up");
    IdempotentSplit s{detail::restrict_to_lattice(m, plus, m.name() + "+"),
                      detail::restrict_to_lattice(m, minus, m.name() + "-")};
    if (!(s.image.character() + s.kernel.character() == m.character()))
        throw AssertionFailure("split_idempotent: characters of the summands do not add up");
    return s;
}

struct LatticeCheck {
    bool ok = false;
    std::string reason;
    Integer index; // |det B| = [Z^d : W̲]
};

// Independent checker for the output of adapt_lattice: B spans a Γ-stable
// Z-lattice W̲ ⊆ Z^d with W̲ ⊗ Z_p = V̲ ⊕ V̲' (the Z_(p)-spans of the given
// generators), and E induces the decomposition on W̲ modulo p^precision.
inline LatticeCheck check_adapted_lattice(const CharModule& w, const QMatrix& e, const ZMatrix& b, const QMatrix& v,
                                          const QMatrix& v_prime, unsigned precision)
{
    LatticeCheck out;
    const long p = w.prime();
    const std::size_t d = w.rank();
    if (b.rows() != d || b.cols() != d) {
        out.reason = "basis is not square of size d";
        return out;
    }
    const QMatrix bq = to_rational(b);
    const Rational det = linalg::determinant(bq);
    if (det.is_zero()) {
        out.reason = "basis is singular";
        return out;
    }
    out.index = abs(det).numerator();
    const QMatrix b_inv = linalg::inverse(bq);
    for (std::size_t g = 0; g < w.group().order(); ++g)
        if (!linalg::is_integral(b_inv * w.rho(g) * bq)) {
            out.reason = "lattice is not stable under ρ(" + std::to_string(g) + ")";
            return out;
        }
    const Valuation k(static_cast<long>(precision));
    if (linalg::matrix_p_valuation(e * v - v, p) < k || linalg::matrix_p_valuation(e * v_prime, p) < k) {
        out.reason = "given lattices do not lie in im E and ker E modulo p^k";
        return out;
    }
    const QMatrix target = linalg::p_local_basis(hconcat(v, v_prime), p);
    if (target.cols() != d) {
        out.reason = "V̲ ⊕ V̲' is not a full lattice";
        return out;
    }
    if (!linalg::is_p_integral(b_inv * target, p) || !linalg::is_p_integral(linalg::inverse(target) * bq, p)) {
        out.reason = "W̲ ⊗ Z_p differs from V̲ ⊕ V̲'";
        return out;
    }
    const QMatrix eb = b_inv * e * bq;
    if (!linalg::is_p_integral(eb, p)) {
        out.reason = "E does not preserve W̲ ⊗ Z_p";
        return out;
    }
    if (linalg::matrix_p_valuation(eb * eb - eb, p) < k) {
        out.reason = "E is not idempotent on W̲ modulo p^k";
        return out;
    }
    if (detail::rank_mod_p(eb, p) + detail::rank_mod_p(QMatrix::identity(d) - eb, p) != d) {
        out.reason = "E does not split W̲ / pW̲";
        return out;
    }
    out.ok = true;
    return out;
}

// Γ-stable Z-lattice W̲ ⊆ W with W̲ ⊗ Z_p = V̲ ⊕ V̲', where V̲ and V̲' are the
// Z_(p)[Γ]-modules spanned by the columns of v and v_prime. Each generator is
// approximated modulo p^j inside the ambient lattice (columns of `ambient`),
// the Z[Γ]-span of the approximations is taken, and j is raised up to
// `precision` until the checker accepts.
inline ZMatrix adapt_lattice(const CharModule& w, const QMatrix& e, unsigned precision, const QMatrix& v,
                             const QMatrix& v_prime, const ZMatrix& ambient)
{
    if (!w.has_integer_entries())
        throw InvalidInput("AdaptLattice.integral_representation", "W must have integer matrix entries");
    if (precision == 0) throw InvalidInput("AdaptLattice.precision", "precision must be at least 1");
    detail::require_idempotent(w, e, precision);
    const long p = w.prime();
    const std::size_t d = w.rank();
    const QMatrix amb = to_rational(ambient);
    const QMatrix gens = hconcat(v, v_prime);
    const QMatrix coords = linalg::solve_left_factor(amb, gens);
    if (!linalg::is_p_integral(coords, p))
        throw InvalidInput("AdaptLattice.generators", "generators do not lie in the ambient lattice over Z_(p)");
    std::string last_reason;
    for (unsigned j = 1; j <= precision; ++j) {
        const Integer mod = integer_pow(p, j);
        ZMatrix approx(coords.rows(), coords.cols());
        for (std::size_t r = 0; r < coords.rows(); ++r)
            for (std::size_t c = 0; c < coords.cols(); ++c) approx(r, c) = residue_mod(coords(r, c), mod);
        const ZMatrix w_gens = ambient * approx;
        std::vector<std::vector<Integer>> span;
        for (std::size_t g = 0; g < w.group().order(); ++g) {
            const ZMatrix rho = w.rho(g).map<Integer>([](const Rational& x) { return x.numerator(); });
            const ZMatrix moved = rho * w_gens;
            for (std::size_t c = 0; c < moved.cols(); ++c) span.push_back(moved.column(c));
        }
        const ZMatrix basis = linalg::hermite_basis(ZMatrix::from_columns(d, span));
        if (basis.cols() != d) {
            last_reason = "approximations span a lattice of rank " + std::to_string(basis.cols());
            continue;
        }
        const auto check = check_adapted_lattice(w, e, basis, v, v_prime, precision);
        if (check.ok) return basis;
        last_reason = check.reason;
    }
    throw AssertionFailure("adapt_lattice: approximation fails within precision " + std::to_string(precision) + ": " +
                           last_reason);
}

// Default lattices V̲ = E·Z_p^d and V̲' = (1 − E)·Z_p^d inside W = Z^d.
inline ZMatrix adapt_lattice(const CharModule& w, const QMatrix& e, unsigned precision)
{
    const std::size_t d = w.rank();
    return adapt_lattice(w, e, precision, e, QMatrix::identity(d) - e, ZMatrix::identity(d));
}

struct NestedLattices {
    ZMatrix outer; // adapted to V̲_2 ⊕ V̲'
    ZMatrix inner; // adapted to V̲_1 ⊕ V̲', contained in outer
};

// Nested construction: W̲_2 is adapted to V̲_2 = E·Z_p^d, then W̲_1 is built
// from approximations chosen inside W̲_2, for a Γ-stable V̲_1 ⊆ V̲_2 spanned
// by the columns of v1.
inline NestedLattices adapt_lattice_nested(const CharModule& w, const QMatrix& e, unsigned precision, const QMatrix& v1)
{
    const std::size_t d = w.rank();
    const QMatrix v_prime = QMatrix::identity(d) - e;
    NestedLattices out;
    out.outer = adapt_lattice(w, e, precision, e, v_prime, ZMatrix::identity(d));
    out.inner = adapt_lattice(w, e, precision, v1, v_prime, out.outer);
    return out;
}

// True iff the column lattice of `inner` is contained in that of `outer`.
inline bool lattice_contains(const ZMatrix& outer, const ZMatrix& inner)
{
    return linalg::is_integral(linalg::solve_left_factor(to_rational(outer), to_rational(inner)));
}

} // namespace ramcond
