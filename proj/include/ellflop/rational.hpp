#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace ellflop {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
   public:
    Rational() = default;
    Rational(long n) : q_(n) {}
    Rational(const BigInt& n) : q_(n) {}
    Rational(const BigInt& n, const BigInt& d) {
        if (d == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    /// Parses "a" or "a/b" (optional leading sign on a).
    static Rational from_string(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(BigInt(strip_plus(s)));
            BigInt n(strip_plus(s.substr(0, slash)));
            BigInt d(s.substr(slash + 1));
            if (d <= 0) throw Error("non-positive denominator in \"" + s + "\"");
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw Error("not a rational number: \"" + s + "\"");
        }
    }

    const BigInt& num() const { return q_.get_num(); }
    const BigInt& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const {
        if (is_integer()) return num().get_str();
        return num().get_str() + "/" + den().get_str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

   private:
    static std::string strip_plus(std::string s) {
        if (!s.empty() && s.front() == '+') s.erase(0, 1);
        return s;
    }
    mpq_class q_{0};
};

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt big_pow(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

}  // namespace ellflop
