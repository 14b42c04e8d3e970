#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "order.hpp"
#include "rational.hpp"

namespace ellflop {

/// Exponent vector aligned with the owning polynomial's variable list.
/// A variable with exponent 0 is absent from the monomial.
using Monomial = std::vector<unsigned>;

using Point = std::map<std::string, Rational>;

/**
 * Sparse multivariate polynomial with exact rational coefficients.
 *
 * Terms are kept in a map ordered lexicographically on the declared variable
 * order (first variable most significant), with no zero coefficients, so two
 * polynomials over the same variables are equal iff their term maps are.
 */
class RatPoly {
   public:
    using Terms = std::map<Monomial, Rational>;

    RatPoly() = default;
    explicit RatPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}
    RatPoly(std::vector<std::string> variables, Terms terms) : vars_(std::move(variables)) {
        for (auto& [m, c] : terms) {
            if (m.size() != vars_.size()) throw UniverseMismatch("monomial arity does not match variables");
            if (!c.is_zero()) terms_.emplace(m, std::move(c));
        }
    }

    static RatPoly constant(std::vector<std::string> variables, const Rational& c) {
        RatPoly p(std::move(variables));
        if (!c.is_zero()) p.terms_.emplace(Monomial(p.vars_.size(), 0), c);
        return p;
    }
    static RatPoly variable(std::vector<std::string> variables, const std::string& name, unsigned exp = 1) {
        RatPoly p(std::move(variables));
        Monomial m(p.vars_.size(), 0);
        m[p.index_of(name)] = exp;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }
    RatPoly zero_like() const { return RatPoly(vars_); }
    RatPoly constant_like(const Rational& c) const { return constant(vars_, c); }
    RatPoly variable_like(const std::string& name, unsigned exp = 1) const { return variable(vars_, name, exp); }

    const std::vector<std::string>& variables() const { return vars_; }
    const Terms& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }

    std::size_t index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw UniverseMismatch("undeclared variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }
    bool declares(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                                  [](unsigned e) { return e == 0; }));
    }
    /// Constant term (zero if absent).
    Rational constant_term() const {
        auto it = terms_.find(Monomial(vars_.size(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Leading term in lex order; precondition: non-zero.
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, sum(m));
        return d;
    }
    /// Minimal total degree of a term; the order of vanishing at the origin.
    Order min_total_degree() const {
        if (is_zero()) return Order::infinity();
        unsigned d = sum(terms_.begin()->first);
        for (const auto& [m, c] : terms_) d = std::min(d, sum(m));
        return Order(d);
    }
    unsigned degree_in(std::size_t idx) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[idx]);
        return d;
    }
    unsigned degree_in(const std::string& name) const { return degree_in(index_of(name)); }
    /// Indices of variables that occur with positive exponent.
    std::vector<std::size_t> used_variables() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (degree_in(i) > 0) out.push_back(i);
        return out;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RatPoly operator-() const {
        RatPoly r(vars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
        return r;
    }
    RatPoly& operator+=(const RatPoly& o) {
        check_universe(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    RatPoly& operator-=(const RatPoly& o) {
        check_universe(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    RatPoly& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const Rational& s) { return a *= s; }
    friend RatPoly operator*(const Rational& s, RatPoly a) { return a *= s; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        a.check_universe(b);
        RatPoly r(a.vars_);
        Monomial m(a.vars_.size());
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    RatPoly& operator*=(const RatPoly& o) { return *this = *this * o; }

    /// Multiplies by the monomial given as an exponent vector.
    RatPoly shifted(const Monomial& by) const {
        RatPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            Monomial n = m;
            for (std::size_t i = 0; i < n.size(); ++i) n[i] += by[i];
            r.terms_.emplace_hint(r.terms_.end(), std::move(n), c);
        }
        return r;
    }

    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    void check_universe(const RatPoly& o) const {
        if (vars_ != o.vars_) throw UniverseMismatch("polynomials over different variable lists");
    }

   private:
    static unsigned sum(const Monomial& m) {
        unsigned s = 0;
        for (unsigned e : m) s += e;
        return s;
    }

    std::vector<std::string> vars_;
    Terms terms_;
};

/// Binary exponentiation.
inline RatPoly pow(const RatPoly& p, unsigned k) {
    RatPoly result = p.constant_like(1);
    RatPoly base = p;
    while (k > 0) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

inline RatPoly derivative(const RatPoly& p, std::size_t idx) {
    RatPoly r(p.variables());
    for (const auto& [m, c] : p.terms()) {
        if (m[idx] == 0) continue;
        Monomial n = m;
        --n[idx];
        r.add_term(n, c * Rational(static_cast<long>(m[idx])));
    }
    return r;
}
inline RatPoly derivative(const RatPoly& p, const std::string& var) { return derivative(p, p.index_of(var)); }

/// Coefficients of p viewed as a polynomial in variable idx, keyed by degree.
/// Each coefficient stays in p's universe with exponent idx cleared.
inline std::map<unsigned, RatPoly> coefficients_in(const RatPoly& p, std::size_t idx) {
    std::map<unsigned, RatPoly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial n = m;
        n[idx] = 0;
        auto [it, _] = out.try_emplace(m[idx], RatPoly(p.variables()));
        it->second.add_term(n, c);
    }
    return out;
}

/// Exact division. Returns the quotient r with q*r == p, or nullopt when q does not divide p.
inline std::optional<RatPoly> exact_divide(const RatPoly& p, const RatPoly& q) {
    p.check_universe(q);
    if (q.is_zero()) throw DivisionByZero("exact_divide by the zero polynomial");
    if (p.is_zero()) return p.zero_like();
    for (std::size_t i = 0; i < p.variables().size(); ++i)
        if (q.degree_in(i) > p.degree_in(i)) return std::nullopt;

    const Monomial& lq = q.leading_monomial();
    const Rational& cq = q.leading_coefficient();
    RatPoly rem = p;
    RatPoly quot = p.zero_like();
    Monomial shift(lq.size());
    while (!rem.is_zero()) {
        const Monomial& lr = rem.leading_monomial();
        for (std::size_t i = 0; i < lr.size(); ++i) {
            if (lr[i] < lq[i]) return std::nullopt;
            shift[i] = lr[i] - lq[i];
        }
        Rational c = rem.leading_coefficient() / cq;
        quot.add_term(shift, c);
        rem -= q.shifted(shift) * c;
    }
    return quot;
}

/// Division that the caller knows to be exact.
inline RatPoly divide_exactly(const RatPoly& p, const RatPoly& q) {
    auto r = exact_divide(p, q);
    if (!r) throw Error("internal: expected exact polynomial division");
    return *r;
}

/**
 * Composes p with a substitution map. Every variable of p maps to its image in
 * `images` or, failing that, to the same-named variable of the target universe.
 */
inline RatPoly compose(const RatPoly& p, const std::vector<std::string>& target,
                       const std::map<std::string, RatPoly>& images) {
    const auto& vars = p.variables();
    std::vector<std::vector<RatPoly>> powers(vars.size());
    std::vector<RatPoly> base;
    base.reserve(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = images.find(vars[i]);
        if (it != images.end()) {
            if (it->second.variables() != target)
                throw UniverseMismatch("substituted value is not over the target variables");
            base.push_back(it->second);
        } else if (p.degree_in(i) == 0) {
            base.push_back(RatPoly::constant(target, 1));
        } else {
            base.push_back(RatPoly::variable(target, vars[i]));
        }
        powers[i].push_back(RatPoly::constant(target, 1));
    }
    auto power = [&](std::size_t i, unsigned e) -> const RatPoly& {
        while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * base[i]);
        return powers[i][e];
    };
    RatPoly result(target);
    for (const auto& [m, c] : p.terms()) {
        RatPoly term = RatPoly::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term *= power(i, m[i]);
        result += term;
    }
    return result;
}

/// Replaces `var` by `value`; the result lives in value's variable universe.
inline RatPoly substitute(const RatPoly& p, const std::string& var, const RatPoly& value) {
    p.index_of(var);
    return compose(p, value.variables(), {{var, value}});
}

/// Sets `var` to a rational value and drops it from the universe.
inline RatPoly specialize(const RatPoly& p, const std::string& var, const Rational& value) {
    std::vector<std::string> rest;
    for (const auto& v : p.variables())
        if (v != var) rest.push_back(v);
    p.index_of(var);
    return compose(p, rest, {{var, RatPoly::constant(rest, value)}});
}

/// Moves `point` to the origin: x -> x + point[x] for each assigned variable.
inline RatPoly translate(const RatPoly& p, const Point& point) {
    std::map<std::string, RatPoly> images;
    for (const auto& [name, value] : point) {
        if (value.is_zero()) continue;
        images.emplace(name, p.variable_like(name) + p.constant_like(value));
    }
    if (images.empty()) return p;
    return compose(p, p.variables(), images);
}

/// Order of vanishing at a point assigning every variable.
inline Order ord_at_point(const RatPoly& p, const Point& point) {
    for (const auto& v : p.variables())
        if (!point.count(v)) throw UniverseMismatch("point does not assign variable '" + v + "'");
    for (const auto& [name, value] : point) p.index_of(name);
    return translate(p, point).min_total_degree();
}

/// Largest k with d^k dividing p. The divisor is trusted to be prime.
inline Order ord_along(const RatPoly& p, const RatPoly& d) {
    if (d.is_constant()) throw DegenerateArgument("ord_along needs a non-constant divisor");
    if (p.is_zero()) return Order::infinity();
    unsigned k = 0;
    RatPoly rest = p;
    while (auto q = exact_divide(rest, d)) {
        rest = std::move(*q);
        ++k;
    }
    return Order(k);
}

}  // namespace ellflop
