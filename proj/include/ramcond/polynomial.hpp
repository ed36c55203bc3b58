#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ramcond/rational.hpp"

// Dense univariate polynomials over Q, stored low degree first with no
// trailing zero coefficients (the zero polynomial is the empty vector).
namespace ramcond::poly {

using QPoly = std::vector<Rational>;

inline QPoly& trim(QPoly& a)
{
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
}

inline long degree(const QPoly& a) { return static_cast<long>(a.size()) - 1; }

inline QPoly from_integers(const std::vector<Integer>& c)
{
    QPoly r(c.begin(), c.end());
    return trim(r);
}

inline QPoly add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(r);
}

inline QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(r);
}

inline QPoly scale(const QPoly& a, const Rational& c)
{
    if (c.is_zero()) return {};
    QPoly r(a);
    for (auto& x : r) x *= c;
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(r);
}

// Euclidean division a = q·b + r with deg r < deg b.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b)
{
    if (b.empty()) throw DomainError("poly::divmod: division by the zero polynomial");
    trim(a);
    if (degree(a) < degree(b)) return {QPoly{}, a};
    QPoly q(a.size() - b.size() + 1);
    const Rational lead_inv = b.back().inverse();
    for (long k = degree(a) - degree(b); k >= 0; --k) {
        const Rational c = a[static_cast<std::size_t>(k) + b.size() - 1] * lead_inv;
        q[static_cast<std::size_t>(k)] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[static_cast<std::size_t>(k) + j] -= c * b[j];
    }
    trim(q);
    trim(a);
    return {q, a};
}

// Returns (g, s, t) with s·a + t·b = g and g monic (g = 0 only if a = b = 0).
inline std::tuple<QPoly, QPoly, QPoly> xgcd(const QPoly& a, const QPoly& b)
{
    QPoly r0 = a, r1 = b, s0{Rational(1)}, s1{}, t0{}, t1{Rational(1)};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, sub(s0, mul(q, s1)));
        t0 = std::exchange(t1, sub(t0, mul(q, t1)));
    }
    if (!r0.empty()) {
        const Rational inv = r0.back().inverse();
        r0 = scale(r0, inv);
        s0 = scale(s0, inv);
        t0 = scale(t0, inv);
    }
    return {r0, s0, t0};
}

inline std::string to_string(const QPoly& a, const std::string& var = "X")
{
    if (a.empty()) return "0";
    std::string out;
    for (long k = degree(a); k >= 0; --k) {
        const Rational& c = a[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        const Rational mag = abs(c);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const bool unit = mag == Rational(1);
        if (k == 0 || !unit) out += mag.to_string();
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

} // namespace ramcond::poly
