#pragma once

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polynomial.hpp"

namespace ellflop {

/**
 * Recursive-descent reader for the polynomial grammar
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := base ('^' nonneg-integer)?
 *   base   := rational | variable | '(' expr ')'
 *   rational := integer ('/' positive-integer)?
 *
 * Whitespace is insignificant and implicit multiplication is rejected. The
 * optional leading sign lets printed negative polynomials read back.
 */
class PolyParser {
   public:
    static constexpr unsigned kMaxExponent = 4096;

    PolyParser(std::string_view text, std::vector<std::string> variables)
        : text_(text), vars_(std::move(variables)) {}

    RatPoly parse() {
        pos_ = 0;
        RatPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

   private:
    RatPoly expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = text_[pos_] == '-';
            ++pos_;
        }
        RatPoly acc = term();
        if (negate) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            RatPoly t = term();
            if (c == '+') acc += t;
            else acc -= t;
        }
        return acc;
    }

    RatPoly term() {
        RatPoly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            acc *= factor();
        }
        skip_ws();
        char c = peek();
        if (c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_')
            fail("implicit multiplication is not supported");
        return acc;
    }

    RatPoly factor() {
        RatPoly b = base();
        skip_ws();
        if (peek() != '^') return b;
        ++pos_;
        skip_ws();
        if (peek() == '-') fail("negative exponent");
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        std::size_t start = pos_;
        std::string digits = read_digits();
        if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) {
            pos_ = start;
            fail("exponent too large");
        }
        return pow(b, static_cast<unsigned>(std::stoul(digits)));
    }

    RatPoly base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatPoly inner = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num(read_digits());
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                std::size_t at = pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
                BigInt den(read_digits());
                if (den == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
                return RatPoly::constant(vars_, Rational(num, den));
            }
            return RatPoly::constant(vars_, Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            for (const auto& v : vars_)
                if (v == name) return RatPoly::variable(vars_, name);
            pos_ = start;
            fail("undeclared variable '" + name + "'");
        }
        if (pos_ >= text_.size()) fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    std::string_view text_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

inline RatPoly parse(std::string_view text, const std::vector<std::string>& variables) {
    return PolyParser(text, variables).parse();
}

/// Terms in descending lex order, e.g. "4*u^12 + 27" or "-1/2*s*t^2 + s".
inline std::string format(const RatPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& vars = p.variables();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << '-';
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool has_vars = false;
        for (unsigned e : m) has_vars |= e > 0;
        bool wrote = false;
        if (!has_vars || !mag.is_one()) {
            os << mag.str();
            wrote = true;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (wrote) os << '*';
            os << vars[i];
            if (m[i] > 1) os << '^' << m[i];
            wrote = true;
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << format(p); }

}  // namespace ellflop
