#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

#include "ramcond/error.hpp"

namespace ramcond {

using Integer = mpz_class;

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline bool is_prime(long n)
{
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline unsigned long lcm(unsigned long a, unsigned long b) { return std::lcm(a, b); }

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;

    template <typename I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Rational(I n) // NOLINT(google-explicit-constructor)
    {
        if constexpr (std::is_signed_v<I>)
            q_ = mpq_class(static_cast<long>(n));
        else
            q_ = mpq_class(static_cast<unsigned long>(n));
    }

    Rational(const Integer& n) : q_(n) {} // NOLINT(google-explicit-constructor)

    Rational(const Integer& num, const Integer& den)
    {
        if (den == 0) throw DomainError("Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    // Accepts "n" or "n/d" with an optional leading '-' (ASCII or U+2212).
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        static constexpr std::string_view unicode_minus = "\xE2\x88\x92";
        if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());
        auto bad = [&] { return InvalidInput("Rational.syntax", "cannot parse '" + std::string(text) + "'"); };
        if (s.empty()) throw bad();
        auto slash = s.find('/');
        auto is_int = [](std::string_view t, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !t.empty() && t[0] == '-') i = 1;
            if (i >= t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (slash == std::string::npos) {
            if (!is_int(s, true)) throw bad();
            return Rational(Integer(s));
        }
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num, true) || !is_int(den, false)) throw bad();
        Integer d(den);
        if (d == 0) throw InvalidInput("Rational.denominator", "zero denominator in '" + std::string(text) + "'");
        return Rational(Integer(num), d);
    }

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational inverse() const
    {
        if (is_zero()) throw DomainError("Rational: inverse of zero");
        Rational r;
        r.q_ = 1 / q_;
        return r;
    }

    double to_double() const { return q_.get_d(); }
    std::string to_string() const { return q_.get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero()) throw DomainError("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a)
    {
        Rational r;
        r.q_ = -a.q_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, long e)
{
    if (e < 0) return pow(base.inverse(), -e);
    Rational result(1), b = base;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

// Valuation in Z ∪ {+∞}.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : v_(v), finite_(true) {}

    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }
    long value() const
    {
        if (!finite_) throw DomainError("Valuation: value of +infinity");
        return v_;
    }

    friend constexpr bool operator==(const Valuation& a, const Valuation& b)
    {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b)
    {
        if (a.finite_ && b.finite_) return a.v_ <=> b.v_;
        if (a.finite_ == b.finite_) return std::strong_ordering::equal;
        return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    friend constexpr Valuation operator+(const Valuation& a, const Valuation& b)
    {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation(a.v_ + b.v_);
    }

    std::string to_string() const { return finite_ ? std::to_string(v_) : std::string("inf"); }
    friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

private:
    long v_ = 0;
    bool finite_ = false;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

inline long p_valuation_nonzero(Integer n, long p)
{
    long v = 0;
    Integer pp(p);
    if (n < 0) n = -n;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        n /= pp;
        ++v;
    }
    return v;
}

inline Valuation p_valuation(const Integer& n, long p)
{
    if (n == 0) return Valuation::infinity();
    return Valuation(p_valuation_nonzero(n, p));
}

// Exponent of p in x; +∞ for x = 0.
inline Valuation p_valuation(const Rational& x, long p)
{
    if (!is_prime(p)) throw DomainError("p_valuation: " + std::to_string(p) + " is not prime");
    if (x.is_zero()) return Valuation::infinity();
    return Valuation(p_valuation_nonzero(x.numerator(), p) - p_valuation_nonzero(x.denominator(), p));
}

inline bool is_p_integral(const Rational& x, long p) { return p_valuation(x, p) >= Valuation(0); }

inline Integer integer_pow(long p, unsigned long k)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), k);
    return r;
}

// Least non-negative integer congruent to the p-integral rational x modulo m,
// where m is a power of p.
inline Integer residue_mod(const Rational& x, const Integer& m)
{
    Integer den_inv;
    Integer den = x.denominator();
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("residue_mod: denominator " + den.get_str() + " not invertible mod " + m.get_str());
    Integer r = (x.numerator() * den_inv) % m;
    if (r < 0) r += m;
    return r;
}

} // namespace ramcond

template <>
struct std::hash<ramcond::Rational> {
    std::size_t operator()(const ramcond::Rational& r) const noexcept
    {
        return std::hash<std::string>{}(r.to_string());
    }
};
