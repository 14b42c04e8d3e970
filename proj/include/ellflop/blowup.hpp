#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "weierstrass.hpp"

namespace ellflop {

/**
 * One point blow-up of the base, recorded in its two standard affine charts.
 *
 * With parent coordinates (x, y) translated so the center is the origin:
 *   chart U: x = e*y, coordinates (e, y), exceptional divisor y = 0;
 *   chart V: y = x*w, coordinates (x, w), exceptional divisor x = 0.
 * Both charts carry the pulled-back model after the minimalization twist along
 * the exceptional divisor.
 */
struct BlowupStep {
    unsigned depth = 1;
    std::string label;  // exceptional divisor name, "E<depth>"
    Point center;
    std::string parent_chart;
    std::vector<std::string> parent_variables;
    WeierstrassChart chart_u;
    WeierstrassChart chart_v;
    OrderTriple pulled_orders_u;  // along the exceptional divisor before the twist
    OrderTriple pulled_orders_v;
    unsigned twist_k = 0;
    int base_discrepancy = 1;

    const std::string& u_coordinate() const { return chart_u.variables()[0]; }  // affine coordinate on E
    const std::string& u_exceptional() const { return chart_u.variables()[1]; }
    const std::string& v_exceptional() const { return chart_v.variables()[0]; }
    const std::string& v_coordinate() const { return chart_v.variables()[1]; }  // 1/u on E
};

namespace detail {

inline std::string fresh_name(const std::vector<std::string>& preferred, const std::string& stem,
                              const std::vector<std::string>& taken) {
    auto free = [&](const std::string& n) { return std::find(taken.begin(), taken.end(), n) == taken.end(); };
    for (const auto& n : preferred)
        if (free(n)) return n;
    for (unsigned i = 1;; ++i)
        if (free(stem + std::to_string(i))) return stem + std::to_string(i);
}

}  // namespace detail

/// Blows up the base of m at p and minimalizes along the exceptional divisor in both charts.
inline BlowupStep blow_up(const WeierstrassChart& m, const Point& p, unsigned depth = 1) {
    const auto& vars = m.variables();
    const std::string& x = vars[0];
    const std::string& y = vars[1];
    std::string e = detail::fresh_name({"u", "w"}, "u", vars);
    std::string w = detail::fresh_name({"v", "z"}, "v", {x, y, e});

    Point full = p;
    for (const auto& v : vars) full.try_emplace(v, Rational(0));
    RatPoly f0 = translate(m.f(), full);
    RatPoly g0 = translate(m.g(), full);

    std::vector<std::string> uvars{e, y};
    std::vector<std::string> vvars{x, w};
    RatPoly x_in_u = RatPoly::variable(uvars, e) * RatPoly::variable(uvars, y);
    RatPoly y_in_v = RatPoly::variable(vvars, x) * RatPoly::variable(vvars, w);

    std::string label = "E" + std::to_string(depth);
    RatPoly exc_u = RatPoly::variable(uvars, y);
    RatPoly exc_v = RatPoly::variable(vvars, x);
    WeierstrassChart pulled_u("U" + std::to_string(depth), substitute(f0, x, x_in_u), substitute(g0, x, x_in_u),
                              {{exc_u, label}});
    WeierstrassChart pulled_v("V" + std::to_string(depth), substitute(f0, y, y_in_v), substitute(g0, y, y_in_v),
                              {{exc_v, label}});

    OrderTriple ou = orders_along(pulled_u, exc_u);
    OrderTriple ov = orders_along(pulled_v, exc_v);
    Minimalization mu = minimalize_along(pulled_u, exc_u, label);
    Minimalization mv = minimalize_along(pulled_v, exc_v, label);
    if (mu.k != mv.k) throw Error("internal: twist multiplicities differ between blow-up charts");

    return BlowupStep{depth, label, p, m.name(), vars, mu.model, mv.model, ou, ov, mu.k, 1};
}

namespace detail {

/// Maps p(e, y) to p(1/w, x*w) * w^weight * w^shift in chart V, choosing shift >= 0
/// so the result is a polynomial. Returns the polynomial and the shift.
inline std::pair<RatPoly, unsigned> transfer_to_v(const RatPoly& p, const std::vector<std::string>& vvars,
                                                  unsigned weight) {
    long shift = 0;
    for (const auto& [m, c] : p.terms())
        shift = std::max(shift, static_cast<long>(m[0]) - static_cast<long>(m[1]) - static_cast<long>(weight));
    RatPoly out(vvars);
    for (const auto& [m, c] : p.terms()) {
        long wexp = static_cast<long>(m[1]) - static_cast<long>(m[0]) + static_cast<long>(weight) + shift;
        out.add_term(Monomial{m[1], static_cast<unsigned>(wexp)}, c);
    }
    return {out, static_cast<unsigned>(shift)};
}

}  // namespace detail

/**
 * Overlap check between the charts: on e*w = 1, y = x*w, so
 * f_U(1/w, x*w) * w^(4k) must equal f_V(x, w), and likewise g with w^(6k).
 */
inline bool charts_agree_on_overlap(const BlowupStep& step) {
    const auto& vvars = step.chart_v.variables();
    auto agrees = [&](const RatPoly& pu, const RatPoly& pv, unsigned weight) {
        auto [moved, shift] = detail::transfer_to_v(pu, vvars, weight);
        Monomial wshift{0, shift};
        return moved == pv.shifted(wshift);
    };
    return agrees(step.chart_u.f(), step.chart_v.f(), 4 * step.twist_k) &&
           agrees(step.chart_u.g(), step.chart_v.g(), 6 * step.twist_k);
}

}  // namespace ellflop
