#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "blowup.hpp"
#include "kodaira.hpp"
#include "polynomial_gcd.hpp"
#include "polynomial_io.hpp"

namespace ellflop {

/// Where a singular fiber of S -> P^1 sits: a rational point of the affine
/// coordinate, the point at infinity, or all roots of a square-free factor.
struct FiberPlace {
    enum class Kind { Rational, Infinity, Factor };

    Kind kind = Kind::Rational;
    std::string coordinate;  // affine coordinate name on E
    Rational point;          // Kind::Rational
    RatPoly factor;          // Kind::Factor
    unsigned points = 1;     // number of geometric points
    KodairaFiber fiber;

    std::string location() const {
        switch (kind) {
            case Kind::Rational: return coordinate + "=" + point.str();
            case Kind::Infinity: return "infinity";
            case Kind::Factor: return "root_of(" + format(factor) + ")";
        }
        return "?";
    }
};

struct FiberConfiguration {
    std::vector<FiberPlace> places;
    unsigned total_delta_degree = 0;

    /// Fiber labels with one entry per geometric point, sorted.
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (const auto& p : places)
            for (unsigned i = 0; i < p.points; ++i) out.push_back(p.fiber.label());
        std::sort(out.begin(), out.end());
        return out;
    }
    unsigned geometric_fiber_count() const {
        unsigned n = 0;
        for (const auto& p : places) n += p.points;
        return n;
    }
};

/// Builds a configuration from places, filling the total discriminant degree.
inline FiberConfiguration make_configuration(std::vector<FiberPlace> places) {
    FiberConfiguration c{std::move(places), 0};
    for (const auto& p : c.places) c.total_delta_degree += p.fiber.euler * p.points;
    return c;
}

struct SurfaceReport {
    std::string label;  // exceptional divisor carrying S
    FiberConfiguration config;
    bool rational = false;
    bool has_46_12_point = false;
    std::optional<FiberPlace> offending_point;
    RatPoly f_restricted, g_restricted, delta_restricted;  // affine coordinate u on E
    RatPoly f_at_infinity, g_at_infinity;                  // coordinate v = 1/u
    unsigned twist_k = 0;
    bool f_degree_ok = false;  // deg f|E <= 4
    bool g_degree_ok = false;  // deg g|E <= 6
    Order zeros_of_f, zeros_of_g;  // on all of P^1, with multiplicity
    bool isotrivial = false;       // j-invariant constant along E
    std::vector<std::string> warnings;
};

namespace detail {

/// Adds x to a pairwise-coprime basis of square-free polynomials, splitting as needed.
inline void refine_basis(std::vector<RatPoly>& basis, const RatPoly& x) {
    if (x.is_constant()) return;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        RatPoly g = gcd(x, basis[i]);
        if (g.is_constant()) continue;
        RatPoly b = basis[i];
        basis.erase(basis.begin() + static_cast<long>(i));
        refine_basis(basis, g);
        refine_basis(basis, divide_exactly(b, g));
        refine_basis(basis, divide_exactly(x, g));
        return;
    }
    basis.push_back(normalize(x));
}

inline Order zero_count(const RatPoly& affine, const RatPoly& at_infinity) {
    if (affine.is_zero()) return Order::infinity();
    Order at_inf = ord_at_point(at_infinity, {{at_infinity.variables()[0], 0}});
    return Order(affine.total_degree()) + at_inf;
}

}  // namespace detail

/**
 * Restricts the twisted model to the exceptional curve and classifies every
 * singular fiber of the resulting elliptic surface over P^1.
 */
inline SurfaceReport extract_surface(const BlowupStep& step) {
    SurfaceReport r;
    r.label = step.label;
    r.twist_k = step.twist_k;
    const std::string& u = step.u_coordinate();
    const std::string& v = step.v_coordinate();

    r.f_restricted = specialize(step.chart_u.f(), step.u_exceptional(), 0);
    r.g_restricted = specialize(step.chart_u.g(), step.u_exceptional(), 0);
    r.delta_restricted = discriminant(r.f_restricted, r.g_restricted);
    r.f_at_infinity = specialize(step.chart_v.f(), step.v_exceptional(), 0);
    r.g_at_infinity = specialize(step.chart_v.g(), step.v_exceptional(), 0);
    if (r.f_restricted.is_zero() && r.g_restricted.is_zero())
        throw RestrictedDeltaZero("f and g both vanish on " + step.label + "; the model is not minimal along it");
    if (r.delta_restricted.is_zero())
        throw RestrictedDeltaZero("the discriminant vanishes identically on " + step.label);

    const RatPoly& fe = r.f_restricted;
    const RatPoly& ge = r.g_restricted;
    const RatPoly& de = r.delta_restricted;

    std::vector<RatPoly> basis;
    for (const RatPoly* p : {&fe, &ge, &de})
        if (!p->is_constant())
            for (const auto& sf : squarefree_decompose(*p).factors) detail::refine_basis(basis, sf.factor);

    std::vector<FiberPlace> places;
    for (const auto& b : basis) {
        if (!exact_divide(de, b)) continue;
        RatPoly rest = b;
        for (const auto& root : univariate_rational_roots(b)) {
            Point at{{u, root.value}};
            OrderTriple t{ord_at_point(fe, at), ord_at_point(ge, at), ord_at_point(de, at)};
            FiberPlace place;
            place.kind = FiberPlace::Kind::Rational;
            place.coordinate = u;
            place.point = root.value;
            place.fiber = classify(t);
            places.push_back(std::move(place));
            rest = divide_exactly(rest, rest.variable_like(u) - rest.constant_like(root.value));
        }
        if (rest.is_constant()) continue;
        rest = normalize(rest);
        OrderTriple t{ord_along(fe, rest), ord_along(ge, rest), ord_along(de, rest)};
        FiberPlace place;
        place.kind = FiberPlace::Kind::Factor;
        place.coordinate = u;
        place.factor = rest;
        place.points = rest.total_degree();
        place.fiber = classify(t);
        places.push_back(std::move(place));
    }
    std::sort(places.begin(), places.end(), [](const FiberPlace& a, const FiberPlace& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == FiberPlace::Kind::Rational) return a.point < b.point;
        return format(a.factor) < format(b.factor);
    });

    Point origin_v{{v, 0}};
    OrderTriple at_inf{ord_at_point(r.f_at_infinity, origin_v), ord_at_point(r.g_at_infinity, origin_v),
                       ord_at_point(discriminant(r.f_at_infinity, r.g_at_infinity), origin_v)};
    if (at_inf.d > Order(0)) {
        FiberPlace place;
        place.kind = FiberPlace::Kind::Infinity;
        place.coordinate = u;
        place.fiber = classify(at_inf);
        places.push_back(std::move(place));
    }

    r.config = make_configuration(std::move(places));
    for (const auto& p : r.config.places) {
        if (!meets_46_threshold(p.fiber.triple)) continue;
        if (!r.has_46_12_point || (r.offending_point->kind == FiberPlace::Kind::Factor &&
                                   p.kind != FiberPlace::Kind::Factor))
            r.offending_point = p;
        r.has_46_12_point = true;
    }

    r.f_degree_ok = fe.total_degree() <= 4;
    r.g_degree_ok = ge.total_degree() <= 6;
    r.zeros_of_f = detail::zero_count(fe, r.f_at_infinity);
    r.zeros_of_g = detail::zero_count(ge, r.g_at_infinity);
    r.rational = r.config.total_delta_degree == 12 && !r.has_46_12_point;

    RatPoly four_f3 = Rational(4) * pow(fe, 3);
    r.isotrivial = fe.is_zero() || ge.is_zero() ||
                   four_f3 * de.leading_coefficient() == de * four_f3.leading_coefficient();

    if (r.zeros_of_f != Order(4) && r.zeros_of_g != Order(6))
        r.warnings.push_back(step.label + ": f and g have " + r.zeros_of_f.str() + " and " + r.zeros_of_g.str() +
                             " zeros on P^1 (expected 4 or 6)");
    return r;
}

struct RationalityVerdict {
    bool rational = false;
    bool degree_twelve = false;
    bool no_46_12_point = false;
    bool f_degree_ok = false;
    bool g_degree_ok = false;
    std::string text;
};

/// Rational iff the discriminant has total degree 12 on P^1 and no fiber reaches (4,6,12).
inline RationalityVerdict rationality_verdict(const SurfaceReport& r) {
    RationalityVerdict v;
    v.degree_twelve = r.config.total_delta_degree == 12;
    v.no_46_12_point = !r.has_46_12_point;
    v.f_degree_ok = r.f_degree_ok;
    v.g_degree_ok = r.g_degree_ok;
    v.rational = v.degree_twelve && v.no_46_12_point;
    if (v.rational)
        v.text = "rational elliptic surface (discriminant degree 12, f and g of degrees <= 4 and <= 6)";
    else if (!v.no_46_12_point)
        v.text = "not rational: fiber at " + r.offending_point->location() + " reaches (4,6,12); blow up again";
    else
        v.text = "not rational: discriminant degree " + std::to_string(r.config.total_delta_degree) + " != 12";
    return v;
}

inline bool euler_check(const FiberConfiguration& config) {
    unsigned sum = 0;
    for (const auto& p : config.places) sum += p.fiber.euler * p.points;
    return sum == 12;
}

}  // namespace ellflop
