#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ramcond/series.hpp"

namespace ramcond {

// Grammar:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*          division by constants only
//   unary := ('+' | '-') unary | power
//   power := atom ('^' '-'? integer)?             negative powers of constants only
//   atom  := integer | 'p' | identifier | '(' expr ')'
// The minus sign may also be written as U+2212.
namespace detail {

struct Token {
    enum Kind { Number, Ident, Op, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    static constexpr std::string_view unicode_minus = "\xE2\x88\x92";
    std::size_t i = 0;
    while (i < src.size()) {
        const char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (src.substr(i, unicode_minus.size()) == unicode_minus) {
            out.push_back({Token::Op, "-", i});
            i += unicode_minus.size();
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Number, std::string(src.substr(i, j - i)), i});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Token::Ident, std::string(src.substr(i, j - i)), i});
            i = j;
        } else if (std::string_view("+-*/^()").find(ch) != std::string_view::npos) {
            out.push_back({Token::Op, std::string(1, ch), i});
            ++i;
        } else {
            throw InvalidInput("Series.syntax", "unexpected character '" + std::string(1, ch) + "' at offset " +
                                                    std::to_string(i));
        }
    }
    out.push_back({Token::End, "", src.size()});
    return out;
}

class SeriesParser {
public:
    SeriesParser(std::vector<Token> tokens, const SeriesRingSpec& ring) : t_(std::move(tokens)), ring_(ring) {}

    MixedSeries parse()
    {
        MixedSeries v = expr();
        if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
        return v;
    }

private:
    const Token& peek() const { return t_[i_]; }
    bool accept(const char* op)
    {
        if (peek().kind == Token::Op && peek().text == op) {
            ++i_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw InvalidInput("Series.syntax", what + " at offset " + std::to_string(peek().pos));
    }

    static std::optional<Rational> as_constant(const MixedSeries& f)
    {
        for (const auto& [e, c] : f.terms())
            if (total_degree(e) != 0) return std::nullopt;
        return f.constant_term();
    }

    MixedSeries expr()
    {
        MixedSeries v = term();
        for (;;) {
            if (accept("+"))
                v += term();
            else if (accept("-"))
                v -= term();
            else
                return v;
        }
    }

    MixedSeries term()
    {
        MixedSeries v = unary();
        for (;;) {
            if (accept("*")) {
                v *= unary();
            } else if (accept("/")) {
                const auto d = as_constant(unary());
                if (!d) fail("division by a non-constant");
                if (d->is_zero()) fail("division by zero");
                v = d->inverse() * v;
            } else {
                return v;
            }
        }
    }

    MixedSeries unary()
    {
        if (accept("-")) return -unary();
        if (accept("+")) return unary();
        return power();
    }

    MixedSeries power()
    {
        MixedSeries base = atom();
        if (!accept("^")) return base;
        const bool negative = accept("-");
        if (peek().kind != Token::Number) fail("expected an integer exponent");
        const std::string digits = peek().text;
        ++i_;
        if (digits.size() > 6) fail("exponent too large");
        const long k = std::stol(digits);
        if (!negative) return base.pow(static_cast<unsigned>(k));
        const auto c = as_constant(base);
        if (!c) fail("negative exponent on a non-constant");
        if (c->is_zero()) fail("negative power of zero");
        return MixedSeries::constant(ring_, ramcond::pow(*c, -k));
    }

    MixedSeries atom()
    {
        const Token tok = peek();
        if (tok.kind == Token::Number) {
            ++i_;
            return MixedSeries::constant(ring_, Rational(Integer(tok.text)));
        }
        if (tok.kind == Token::Ident) {
            ++i_;
            if (tok.text == "p") return MixedSeries::constant(ring_, Rational(ring_.p));
            if (!ring_.index_of(tok.text)) fail("unknown variable '" + tok.text + "'");
            return MixedSeries::variable(ring_, tok.text);
        }
        if (accept("(")) {
            MixedSeries v = expr();
            if (!accept(")")) fail("expected ')'");
            return v;
        }
        fail(tok.kind == Token::End ? "unexpected end of input" : "unexpected '" + tok.text + "'");
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
    const SeriesRingSpec& ring_;
};

} // namespace detail

inline MixedSeries parse_series(std::string_view text, const SeriesRingSpec& ring)
{
    return detail::SeriesParser(detail::tokenize(text), ring).parse();
}

// Variable names used by the expressions, in order of first appearance.
inline std::vector<std::string> series_variables(const std::vector<std::string>& texts)
{
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& t : texts)
        for (const auto& tok : detail::tokenize(t))
            if (tok.kind == detail::Token::Ident && tok.text != "p" && seen.insert(tok.text).second)
                out.push_back(tok.text);
    return out;
}

// Ring for a set of expressions: names starting with 'T' form the power-bounded
// block, all others the quasi-nilpotent block; each block is sorted by name.
// A variable named in `last` is moved to the end of its block.
inline SeriesRingSpec infer_ring(const std::vector<std::string>& texts, long p, unsigned degree_cap,
                                 const std::string& last = "")
{
    std::vector<std::string> s, t;
    for (const auto& v : series_variables(texts)) (v[0] == 'T' ? t : s).push_back(v);
    if (!last.empty() && std::find(s.begin(), s.end(), last) == s.end() &&
        std::find(t.begin(), t.end(), last) == t.end())
        s.push_back(last);
    auto order = [&](std::vector<std::string>& block) {
        std::sort(block.begin(), block.end(), [&](const std::string& a, const std::string& b) {
            if ((a == last) != (b == last)) return b == last;
            return a < b;
        });
    };
    order(s);
    order(t);
    return SeriesRingSpec(p, s, t, degree_cap);
}

} // namespace ramcond
