#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace ellflop {

/// Scales p to integer coefficients with gcd 1 and a positive leading coefficient.
inline RatPoly normalize(const RatPoly& p) {
    if (p.is_zero()) return p;
    BigInt den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        den_lcm = lcm(den_lcm, c.den());
        num_gcd = gcd(num_gcd, c.num());
    }
    Rational scale(den_lcm, num_gcd);
    if (p.leading_coefficient().sign() < 0) scale = -scale;
    return p * scale;
}

namespace detail {

inline RatPoly leading_coefficient_in(const RatPoly& p, std::size_t idx) {
    auto coeffs = coefficients_in(p, idx);
    return coeffs.rbegin()->second;
}

/// lc(b)^(deg a - deg b + 1) * a mod b, in the variable idx.
inline RatPoly pseudo_remainder(const RatPoly& a, const RatPoly& b, std::size_t idx) {
    const unsigned db = b.degree_in(idx);
    const RatPoly lb = leading_coefficient_in(b, idx);
    int spare = static_cast<int>(a.degree_in(idx)) - static_cast<int>(db) + 1;
    RatPoly r = a;
    Monomial shift(a.variables().size(), 0);
    while (!r.is_zero() && r.degree_in(idx) >= db) {
        shift[idx] = r.degree_in(idx) - db;
        RatPoly lr = leading_coefficient_in(r, idx);
        r = lb * r - (lr * b).shifted(shift);
        --spare;
    }
    for (; spare > 0; --spare) r *= lb;
    return r;
}

}  // namespace detail

inline RatPoly gcd(const RatPoly& p, const RatPoly& q);

/// gcd of the coefficients of p viewed as a polynomial in variable idx.
inline RatPoly content_in(const RatPoly& p, std::size_t idx) {
    RatPoly c = p.zero_like();
    for (const auto& [deg, coeff] : coefficients_in(p, idx)) {
        c = c.is_zero() ? normalize(coeff) : gcd(c, coeff);
        if (c.is_constant()) return p.constant_like(1);
    }
    return c;
}

namespace detail {

/// Subresultant remainder sequence for a, b primitive in idx with deg a >= deg b > 0.
/// Returns the primitive part of the last non-zero remainder.
inline RatPoly subresultant_gcd(RatPoly a, RatPoly b, std::size_t idx) {
    RatPoly g = a.constant_like(1);
    RatPoly h = a.constant_like(1);
    for (;;) {
        const unsigned d = a.degree_in(idx) - b.degree_in(idx);
        RatPoly r = pseudo_remainder(a, b, idx);
        if (r.is_zero()) break;
        if (r.degree_in(idx) == 0) return a.constant_like(1);
        a = std::move(b);
        b = divide_exactly(r, g * pow(h, d));
        g = leading_coefficient_in(a, idx);
        if (d == 1) h = g;
        else if (d > 1) h = divide_exactly(pow(g, d), pow(h, d - 1));
    }
    return divide_exactly(b, content_in(b, idx));
}

}  // namespace detail

/**
 * Greatest common divisor, normalized to integer content 1 with a positive
 * lex-leading coefficient. Recursive content/primitive-part splitting on the
 * first variable that occurs, with a subresultant remainder sequence per level.
 */
inline RatPoly gcd(const RatPoly& p, const RatPoly& q) {
    p.check_universe(q);
    if (p.is_zero() && q.is_zero()) throw DegenerateArgument("gcd(0, 0) is undefined");
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);
    if (p.is_constant() || q.is_constant()) return p.constant_like(1);

    std::size_t idx = 0;
    while (p.degree_in(idx) == 0 && q.degree_in(idx) == 0) ++idx;
    if (p.degree_in(idx) == 0) return gcd(p, content_in(q, idx));
    if (q.degree_in(idx) == 0) return gcd(content_in(p, idx), q);

    RatPoly cp = content_in(p, idx);
    RatPoly cq = content_in(q, idx);
    RatPoly c = gcd(cp, cq);
    RatPoly a = divide_exactly(p, cp);
    RatPoly b = divide_exactly(q, cq);
    if (a.degree_in(idx) < b.degree_in(idx)) std::swap(a, b);
    return normalize(c * detail::subresultant_gcd(std::move(a), std::move(b), idx));
}

struct SquarefreeFactor {
    RatPoly factor;
    unsigned multiplicity;
};

/// p == unit * prod(factor^multiplicity); factors pairwise coprime, square-free, normalized.
struct SquarefreeDecomposition {
    Rational unit;
    std::vector<SquarefreeFactor> factors;
};

namespace detail {

inline void merge_factor(std::map<unsigned, RatPoly>& out, unsigned mult, const RatPoly& f) {
    auto [it, inserted] = out.try_emplace(mult, f);
    if (!inserted) it->second = normalize(it->second * f);
}

/// Yun's algorithm in variable idx for p primitive in idx.
inline void yun(const RatPoly& p, std::size_t idx, std::map<unsigned, RatPoly>& out) {
    RatPoly dp = derivative(p, idx);
    RatPoly a0 = gcd(p, dp);
    RatPoly b = divide_exactly(p, a0);
    RatPoly c = divide_exactly(dp, a0);
    RatPoly d = c - derivative(b, idx);
    for (unsigned i = 1; !b.is_constant(); ++i) {
        RatPoly a = gcd(b, d);
        if (!a.is_constant()) merge_factor(out, i, normalize(a));
        b = divide_exactly(b, a);
        c = divide_exactly(d, a);
        d = c - derivative(b, idx);
    }
}

inline void squarefree_rec(const RatPoly& p, std::map<unsigned, RatPoly>& out) {
    if (p.is_constant()) return;
    std::size_t idx = 0;
    while (p.degree_in(idx) == 0) ++idx;
    RatPoly content = content_in(p, idx);
    yun(divide_exactly(p, content), idx, out);
    squarefree_rec(content, out);
}

}  // namespace detail

inline SquarefreeDecomposition squarefree_decompose(const RatPoly& p) {
    if (p.is_constant()) throw DegenerateArgument("squarefree_decompose needs a non-constant polynomial");
    std::map<unsigned, RatPoly> by_mult;
    detail::squarefree_rec(normalize(p), by_mult);
    SquarefreeDecomposition out;
    RatPoly product = p.constant_like(1);
    for (auto& [mult, f] : by_mult) {
        product *= pow(f, mult);
        out.factors.push_back({std::move(f), mult});
    }
    out.unit = p.leading_coefficient() / product.leading_coefficient();
    return out;
}

/// Product of the distinct square-free factors (the radical), normalized.
inline RatPoly squarefree_part(const RatPoly& p) {
    RatPoly r = p.constant_like(1);
    for (const auto& f : squarefree_decompose(p).factors) r *= f.factor;
    return normalize(r);
}

struct RationalRoot {
    Rational value;
    unsigned multiplicity;
    friend bool operator==(const RationalRoot&, const RationalRoot&) = default;
};

namespace detail {

/// Positive divisors of |n| by trial division.
inline std::vector<BigInt> positive_divisors(BigInt n) {
    n = abs(n);
    if (n == 0) return {};
    if (n > BigInt("1000000000000"))
        throw Error("coefficient too large for the rational root search");
    std::vector<std::pair<BigInt, unsigned>> primes;
    for (BigInt d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) primes.emplace_back(d, e);
    }
    if (n > 1) primes.emplace_back(n, 1);
    std::vector<BigInt> divs{1};
    for (const auto& [prime, e] : primes) {
        std::size_t count = divs.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= prime;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

inline Rational eval_univariate(const std::map<unsigned, Rational>& coeffs, const Rational& x) {
    Rational acc = 0;
    unsigned deg = coeffs.rbegin()->first;
    for (unsigned k = deg + 1; k-- > 0;) {
        acc *= x;
        auto it = coeffs.find(k);
        if (it != coeffs.end()) acc += it->second;
    }
    return acc;
}

inline std::map<unsigned, Rational> univariate_coefficients(const RatPoly& p, std::size_t idx) {
    std::map<unsigned, Rational> out;
    for (const auto& [m, c] : p.terms()) out[m[idx]] = c;
    return out;
}

}  // namespace detail

/// Index of the single variable occurring in p, nullopt when p is constant.
inline std::optional<std::size_t> univariate_variable(const RatPoly& p) {
    auto used = p.used_variables();
    if (used.size() > 1) throw DegenerateArgument("polynomial is not univariate");
    if (used.empty()) return std::nullopt;
    return used.front();
}

/// All rational roots with multiplicity, ascending. p must be non-zero and effectively univariate.
inline std::vector<RationalRoot> univariate_rational_roots(const RatPoly& p) {
    if (p.is_zero()) throw DegenerateArgument("the zero polynomial has every root");
    auto idx = univariate_variable(p);
    if (!idx) return {};

    std::vector<RationalRoot> roots;
    RatPoly rest = normalize(p);
    unsigned low = rest.terms().begin()->first[*idx];
    for (const auto& [m, c] : rest.terms()) low = std::min(low, m[*idx]);
    if (low > 0) {
        roots.push_back({Rational(0), low});
        Monomial x(p.variables().size(), 0);
        x[*idx] = low;
        rest = divide_exactly(rest, RatPoly(p.variables(), {{x, Rational(1)}}));
    }
    if (rest.is_constant()) return roots;

    RatPoly radical = squarefree_part(rest);
    auto coeffs = detail::univariate_coefficients(radical, *idx);
    const BigInt& lead = coeffs.rbegin()->second.num();
    const BigInt& tail = coeffs.begin()->second.num();
    auto numerators = detail::positive_divisors(tail);
    auto denominators = detail::positive_divisors(lead);

    std::vector<Rational> found;
    for (const auto& n : numerators)
        for (const auto& d : denominators)
            for (int sign : {1, -1}) {
                Rational cand(BigInt(sign) * n, d);
                if (std::find(found.begin(), found.end(), cand) != found.end()) continue;
                if (detail::eval_univariate(coeffs, cand).is_zero()) found.push_back(cand);
            }

    for (const auto& r : found) {
        RatPoly linear = rest.variable_like(p.variables()[*idx]) - rest.constant_like(r);
        unsigned mult = 0;
        while (auto q = exact_divide(rest, linear)) {
            rest = std::move(*q);
            ++mult;
        }
        roots.push_back({r, mult});
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    return roots;
}

}  // namespace ellflop
