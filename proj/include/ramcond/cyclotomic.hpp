#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ramcond/polynomial.hpp"
#include "ramcond/rational.hpp"

namespace ramcond {

inline unsigned euler_phi(unsigned n)
{
    if (n == 0) throw DomainError("euler_phi: n must be positive");
    unsigned result = n, m = n;
    for (unsigned d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        while (m % d == 0) m /= d;
        result -= result / d;
    }
    if (m > 1) result -= result / m;
    return result;
}

inline std::vector<unsigned> divisors(unsigned n)
{
    std::vector<unsigned> out;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

namespace detail {

struct CyclotomicCache {
    std::mutex mutex;
    std::map<unsigned, std::vector<Integer>> polys;
    // powers[N][j] = power-basis coordinates of ζ_N^j, 0 ≤ j < N.
    std::map<unsigned, std::shared_ptr<const std::vector<std::vector<Rational>>>> powers;
};

inline CyclotomicCache& cyclotomic_cache()
{
    static CyclotomicCache cache;
    return cache;
}

// X^N − 1 divided exactly by Φ_d for every proper divisor d of N.
inline std::vector<Integer> compute_cyclotomic(unsigned n, const std::map<unsigned, std::vector<Integer>>& known)
{
    std::vector<Integer> num(n + 1, Integer(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned d : divisors(n)) {
        if (d == n) continue;
        const auto& den = known.at(d);
        // monic exact division
        std::vector<Integer> q(num.size() - den.size() + 1, Integer(0));
        for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
            const Integer c = num[static_cast<std::size_t>(k) + den.size() - 1];
            q[static_cast<std::size_t>(k)] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < den.size(); ++j) num[static_cast<std::size_t>(k) + j] -= c * den[j];
        }
        num = std::move(q);
    }
    return num;
}

} // namespace detail

// Φ_N with integer coefficients, lowest degree first. Memoized; safe to call
// concurrently.
inline const std::vector<Integer>& cyclotomic_polynomial(unsigned n)
{
    if (n == 0) throw DomainError("cyclotomic_polynomial: N must be positive");
    auto& cache = detail::cyclotomic_cache();
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.polys.find(n); it != cache.polys.end()) return it->second;
    for (unsigned d : divisors(n))
        if (!cache.polys.count(d)) cache.polys.emplace(d, detail::compute_cyclotomic(d, cache.polys));
    return cache.polys.at(n);
}

namespace detail {

inline std::shared_ptr<const std::vector<std::vector<Rational>>> power_table(unsigned n)
{
    const auto& phi_poly = cyclotomic_polynomial(n);
    auto& cache = cyclotomic_cache();
    {
        std::lock_guard lock(cache.mutex);
        if (auto it = cache.powers.find(n); it != cache.powers.end()) return it->second;
    }
    const unsigned phi = euler_phi(n);
    auto table = std::make_shared<std::vector<std::vector<Rational>>>();
    table->reserve(n);
    std::vector<Rational> cur(phi);
    cur[0] = 1;
    for (unsigned j = 0; j < n; ++j) {
        table->push_back(cur);
        // multiply by X and reduce with the monic relation X^φ = −Σ c_k X^k
        Rational top = cur[phi - 1];
        for (unsigned k = phi - 1; k > 0; --k) cur[k] = cur[k - 1];
        cur[0] = 0;
        if (!top.is_zero())
            for (unsigned k = 0; k < phi; ++k) cur[k] -= top * Rational(phi_poly[k]);
    }
    std::lock_guard lock(cache.mutex);
    return cache.powers.emplace(n, std::move(table)).first->second;
}

} // namespace detail

// Element of Q(ζ_N) in the power basis 1, ζ_N, …, ζ_N^{φ(N)−1}.
class CycloNum {
public:
    CycloNum() : level_(1), coeffs_(1) {}

    CycloNum(const Rational& r) : level_(1), coeffs_{r} {} // NOLINT(google-explicit-constructor)

    template <typename I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    CycloNum(I n) : CycloNum(Rational(n)) {} // NOLINT(google-explicit-constructor)

    // Builds Σ c_k ζ_N^k from any finite list of coefficients (reduced mod Φ_N).
    static CycloNum from_powers(unsigned level, const std::vector<Rational>& c)
    {
        CycloNum r = zero_at(level);
        const auto table = detail::power_table(level);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            const auto& row = (*table)[k % level];
            for (unsigned i = 0; i < r.coeffs_.size(); ++i)
                if (!row[i].is_zero()) r.coeffs_[i] += c[k] * row[i];
        }
        return r;
    }

    static CycloNum zeta(unsigned level, long k = 1)
    {
        long m = k % static_cast<long>(level);
        if (m < 0) m += level;
        CycloNum r = zero_at(level);
        r.coeffs_ = (*detail::power_table(level))[static_cast<std::size_t>(m)];
        return r;
    }

    static CycloNum zero_at(unsigned level)
    {
        CycloNum r;
        r.level_ = level;
        r.coeffs_.assign(euler_phi(level), Rational(0));
        return r;
    }

    unsigned level() const { return level_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    // Same element at a level that is a multiple of the current one.
    CycloNum embed(unsigned target) const
    {
        if (target == level_) return *this;
        if (target % level_ != 0)
            throw DomainError("CycloNum::embed: level " + std::to_string(target) + " is not a multiple of " +
                              std::to_string(level_));
        const unsigned step = target / level_;
        CycloNum r = zero_at(target);
        const auto table = detail::power_table(target);
        for (unsigned k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            const auto& row = (*table)[(k * step) % target];
            for (unsigned i = 0; i < r.coeffs_.size(); ++i)
                if (!row[i].is_zero()) r.coeffs_[i] += coeffs_[k] * row[i];
        }
        return r;
    }

    // Image under ζ_N ↦ ζ_N^a for a prime to N.
    CycloNum galois(long a) const
    {
        const long n = level_;
        long m = a % n;
        if (m < 0) m += n;
        std::vector<Rational> c(static_cast<std::size_t>(n));
        for (unsigned k = 0; k < coeffs_.size(); ++k) c[(k * static_cast<unsigned long>(m)) % level_] += coeffs_[k];
        return from_powers(level_, c);
    }

    CycloNum conjugate() const { return galois(-1); }

    std::optional<Rational> rational_part() const
    {
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero()) return std::nullopt;
        return coeffs_[0];
    }

    // The same element written at the smallest level N' | N with x ∈ Q(ζ_N').
    CycloNum normalized() const
    {
        for (unsigned d : divisors(level_)) {
            if (d == level_) return *this;
            bool fixed = true;
            for (unsigned a = 1; a < level_ && fixed; ++a)
                if (std::gcd(a, level_) == 1 && a % d == 1 % d && galois(a) != *this) fixed = false;
            if (!fixed) continue;
            if (auto r = solve_in_subfield(d)) return *r;
        }
        return *this;
    }

    CycloNum inverse() const
    {
        if (is_zero()) throw DomainError("CycloNum: division by zero");
        auto [g, s, t] = poly::xgcd(poly::QPoly(coeffs_), poly::from_integers(cyclotomic_polynomial(level_)));
        (void)t;
        if (g.size() != 1) throw AssertionFailure("CycloNum::inverse: representative not coprime to Φ_N");
        return from_powers(level_, s);
    }

    CycloNum& operator+=(const CycloNum& o) { return combine(o, +1); }
    CycloNum& operator-=(const CycloNum& o) { return combine(o, -1); }
    CycloNum& operator*=(const CycloNum& o)
    {
        if (auto r = o.rational_part(); r && o.level_ <= level_ && level_ % o.level_ == 0) {
            for (auto& c : coeffs_) c *= *r;
            return *this;
        }
        const unsigned n = static_cast<unsigned>(lcm(level_, o.level_));
        const CycloNum a = embed(n), b = o.embed(n);
        std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                if (!b.coeffs_[j].is_zero()) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        *this = from_powers(n, prod);
        return *this;
    }
    CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }

    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
    friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
    friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
    friend CycloNum operator-(CycloNum a)
    {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b)
    {
        if (a.level_ == b.level_) return a.coeffs_ == b.coeffs_;
        const unsigned n = static_cast<unsigned>(lcm(a.level_, b.level_));
        return a.embed(n).coeffs_ == b.embed(n).coeffs_;
    }

    // Display only: ζ_N ↦ exp(2πi/N) in double precision.
    std::complex<double> to_complex() const
    {
        std::complex<double> z = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero()) continue;
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / level_;
            z += coeffs_[k].to_double() * std::polar(1.0, ang);
        }
        return z;
    }

    std::string to_decimal(int digits = 3) const
    {
        const auto z = to_complex();
        auto fmt = [digits](double x) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", digits, x);
            std::string s(buf);
            if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
            return s;
        };
        std::string re = fmt(z.real()), im = fmt(z.imag());
        if (im[0] != '-') im = "+" + im;
        return re + im + "i";
    }

    // Power-basis rendering, e.g. "-2/3 + (-1/3)·ζ_3".
    std::string to_string() const
    {
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const Rational& c = coeffs_[k];
            if (c.is_zero()) continue;
            if (!out.empty()) out += " + ";
            if (k == 0) {
                out += c.to_string();
                continue;
            }
            if (c != Rational(1)) {
                if (c.sign() < 0 || !c.is_integer())
                    out += "(" + c.to_string() + ")·";
                else
                    out += c.to_string() + "·";
            }
            out += "ζ_" + std::to_string(level_);
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << x.to_string(); }

private:
    CycloNum& combine(const CycloNum& o, int sign)
    {
        if (o.level_ != level_) {
            const unsigned n = static_cast<unsigned>(lcm(level_, o.level_));
            if (n != level_) *this = embed(n);
            if (n != o.level_) return combine(o.embed(n), sign);
        }
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (sign > 0)
                coeffs_[k] += o.coeffs_[k];
            else
                coeffs_[k] -= o.coeffs_[k];
        }
        return *this;
    }

    // Coordinates at level d, if this element lies in the image of Q(ζ_d).
    std::optional<CycloNum> solve_in_subfield(unsigned d) const
    {
        const unsigned rows = static_cast<unsigned>(coeffs_.size()), cols = euler_phi(d);
        std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1));
        for (unsigned j = 0; j < cols; ++j) {
            const CycloNum basis = zeta(d, j).embed(level_);
            for (unsigned i = 0; i < rows; ++i) aug[i][j] = basis.coeffs_[i];
        }
        for (unsigned i = 0; i < rows; ++i) aug[i][cols] = coeffs_[i];
        unsigned r = 0;
        std::vector<unsigned> pivots;
        for (unsigned c = 0; c < cols && r < rows; ++c) {
            unsigned piv = r;
            while (piv < rows && aug[piv][c].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(aug[piv], aug[r]);
            const Rational inv = aug[r][c].inverse();
            for (auto& x : aug[r]) x *= inv;
            for (unsigned i = 0; i < rows; ++i) {
                if (i == r || aug[i][c].is_zero()) continue;
                const Rational f = aug[i][c];
                for (unsigned k = c; k <= cols; ++k) aug[i][k] -= f * aug[r][k];
            }
            pivots.push_back(c);
            ++r;
        }
        for (unsigned i = r; i < rows; ++i)
            if (!aug[i][cols].is_zero()) return std::nullopt;
        CycloNum out = zero_at(d);
        for (unsigned i = 0; i < r; ++i) out.coeffs_[pivots[i]] = aug[i][cols];
        return out;
    }

    unsigned level_;
    std::vector<Rational> coeffs_;
};

} // namespace ramcond
