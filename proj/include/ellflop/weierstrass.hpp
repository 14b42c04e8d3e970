#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kodaira.hpp"
#include "polynomial.hpp"
#include "polynomial_gcd.hpp"
#include "polynomial_io.hpp"

namespace ellflop {

inline RatPoly discriminant(const RatPoly& f, const RatPoly& g) {
    return Rational(4) * pow(f, 3) + Rational(27) * pow(g, 2);
}

struct ExceptionalDivisor {
    RatPoly divisor;
    std::string label;
};

struct TwistRecord {
    std::string divisor_label;
    unsigned k;
    friend bool operator==(const TwistRecord&, const TwistRecord&) = default;
};

/**
 * Local Weierstrass model y^2 = x^3 + f x + g on a two-variable affine chart of
 * the base. The discriminant 4f^3 + 27g^2 is cached at construction and is
 * never zero.
 */
class WeierstrassChart {
   public:
    WeierstrassChart(std::string chart_name, RatPoly f, RatPoly g, std::vector<ExceptionalDivisor> exceptional = {},
                     std::vector<TwistRecord> twists = {})
        : name_(std::move(chart_name)),
          f_(std::move(f)),
          g_(std::move(g)),
          exceptional_(std::move(exceptional)),
          twists_(std::move(twists)) {
        f_.check_universe(g_);
        if (f_.variables().size() != 2) throw UniverseMismatch("a chart needs exactly two variables");
        delta_ = discriminant(f_, g_);
        if (delta_.is_zero()) throw ZeroDiscriminant();
    }

    const std::string& name() const { return name_; }
    const std::vector<std::string>& variables() const { return f_.variables(); }
    const RatPoly& f() const { return f_; }
    const RatPoly& g() const { return g_; }
    const RatPoly& delta() const { return delta_; }
    const std::vector<ExceptionalDivisor>& exceptional_divisors() const { return exceptional_; }
    const std::vector<TwistRecord>& twist_log() const { return twists_; }

   private:
    std::string name_;
    RatPoly f_, g_, delta_;
    std::vector<ExceptionalDivisor> exceptional_;
    std::vector<TwistRecord> twists_;
};

inline WeierstrassChart make_model(const RatPoly& f, const RatPoly& g, const std::vector<std::string>& vars,
                                   std::string chart_name = "base") {
    if (vars.size() != 2) throw UniverseMismatch("a chart needs exactly two variables");
    if (f.variables() != vars || g.variables() != vars)
        throw UniverseMismatch("f and g must be over the declared chart variables");
    return WeierstrassChart(std::move(chart_name), f, g);
}

inline OrderTriple orders_at(const WeierstrassChart& m, const Point& p) {
    return {ord_at_point(m.f(), p), ord_at_point(m.g(), p), ord_at_point(m.delta(), p)};
}

inline OrderTriple orders_along(const WeierstrassChart& m, const RatPoly& d) {
    return {ord_along(m.f(), d), ord_along(m.g(), d), ord_along(m.delta(), d)};
}

struct Minimalization {
    WeierstrassChart model;
    unsigned k;
};

/// Divides (f, g) by (d^4k, d^6k) for the largest k both allow.
inline Minimalization minimalize_along(const WeierstrassChart& m, const RatPoly& d, const std::string& label) {
    Order a = ord_along(m.f(), d);
    Order b = ord_along(m.g(), d);
    Order k_order = std::min(a.floor_div(4), b.floor_div(6));
    unsigned k = k_order.value();
    if (k == 0) return {m, 0};
    RatPoly f = divide_exactly(m.f(), pow(d, 4 * k));
    RatPoly g = divide_exactly(m.g(), pow(d, 6 * k));
    auto twists = m.twist_log();
    twists.push_back({label, k});
    return {WeierstrassChart(m.name(), std::move(f), std::move(g), m.exceptional_divisors(), std::move(twists)), k};
}

/**
 * Candidate prime divisors derived from the model itself: square-free factors of
 * gcd(f, g), with any coordinate hyperplane that divides a factor split off.
 */
inline std::vector<RatPoly> automatic_candidates(const WeierstrassChart& m) {
    RatPoly common = m.f().is_zero() ? m.g() : (m.g().is_zero() ? m.f() : gcd(m.f(), m.g()));
    std::vector<RatPoly> out;
    if (common.is_constant()) return out;
    auto push = [&](const RatPoly& p) {
        RatPoly n = normalize(p);
        if (!n.is_constant() && std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    for (const auto& sf : squarefree_decompose(common).factors) {
        RatPoly rest = sf.factor;
        for (const auto& v : m.variables()) {
            RatPoly x = rest.variable_like(v);
            if (rest == x) break;
            if (auto q = exact_divide(rest, x)) {
                push(x);
                rest = *q;
            }
        }
        push(rest);
    }
    return out;
}

struct MinimalityResult {
    bool minimal = true;
    std::optional<RatPoly> witness;
    std::optional<OrderTriple> witness_orders;
    std::vector<RatPoly> checked;
};

/// Minimal iff no candidate (user-supplied or automatic) carries orders >= (4, 6).
inline MinimalityResult is_minimal(const WeierstrassChart& m, std::span<const RatPoly> candidate_divisors) {
    MinimalityResult res;
    std::vector<RatPoly> all(candidate_divisors.begin(), candidate_divisors.end());
    for (auto& c : automatic_candidates(m))
        if (std::find(all.begin(), all.end(), c) == all.end()) all.push_back(std::move(c));
    for (const auto& d : all) {
        if (d.is_constant()) continue;
        res.checked.push_back(d);
        OrderTriple t = orders_along(m, d);
        if (res.minimal && meets_46_threshold(t)) {
            res.minimal = false;
            res.witness = d;
            res.witness_orders = t;
        }
    }
    return res;
}

struct DivisorDiagnostic {
    RatPoly divisor;
    bool automatic = false;
    bool through_point = false;
    OrderTriple orders;
    bool meets_threshold = false;
};

struct IsolationResult {
    bool isolated = false;
    OrderTriple point_orders;
    bool point_meets_threshold = false;  // a >= 4 and b >= 6
    bool point_in_46_12_class = false;   // the strict (4,6,12)-fiber predicate
    std::vector<DivisorDiagnostic> divisors;
};

/**
 * The point must meet the (4,6) threshold and every candidate divisor through it
 * must stay strictly below it. Candidates are the user's list plus
 * automatic_candidates(m); the verdict is only as strong as that list.
 */
inline IsolationResult is_isolated_46_12(const WeierstrassChart& m, const Point& p,
                                         std::span<const RatPoly> candidate_divisors) {
    IsolationResult res;
    res.point_orders = orders_at(m, p);
    res.point_meets_threshold = meets_46_threshold(res.point_orders);
    res.point_in_46_12_class = is_46_12_class(res.point_orders);

    auto add = [&](const RatPoly& d, bool automatic) {
        for (const auto& seen : res.divisors)
            if (seen.divisor == d) return;
        if (d.is_constant()) return;
        DivisorDiagnostic diag;
        diag.divisor = d;
        diag.automatic = automatic;
        diag.through_point = ord_at_point(d, p) >= Order(1);
        diag.orders = orders_along(m, d);
        diag.meets_threshold = meets_46_threshold(diag.orders);
        res.divisors.push_back(std::move(diag));
    };
    for (const auto& d : candidate_divisors) add(d, false);
    for (RatPoly d : automatic_candidates(m)) {
        for (const auto& c : candidate_divisors)
            if (!c.is_constant())
                if (auto q = exact_divide(d, c)) d = *q;
        if (!d.is_constant()) add(normalize(d), true);
    }

    res.isolated = res.point_meets_threshold;
    for (const auto& diag : res.divisors)
        if (diag.through_point && diag.meets_threshold) res.isolated = false;
    return res;
}

struct CanonicalVerdict {
    bool met = true;
    std::optional<OrderTriple> offending;
    std::string text;
};

/// Order bound for isolated fibers of a minimal model with normal-crossing
/// discriminant: every (n, m, d) must have n < 8 and m < 12.
inline CanonicalVerdict canonical_bound_check(std::span<const OrderTriple> fibers) {
    CanonicalVerdict v;
    for (const auto& t : fibers) {
        if (!(t.a < Order(8) && t.b < Order(12))) {
            v.met = false;
            v.offending = t;
            v.text = "bound violated by " + t.str() + " (needs n < 8 and m < 12)";
            return v;
        }
    }
    v.text = "at worst canonical singularities (every isolated fiber has n < 8 and m < 12)";
    return v;
}

}  // namespace ellflop
