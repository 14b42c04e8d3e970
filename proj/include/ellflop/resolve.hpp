#pragma once

#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "blowup.hpp"
#include "surface.hpp"
#include "weierstrass.hpp"

namespace ellflop {

struct LedgerEntry {
    std::string label;
    int base_discrepancy = 0;
    int twist_k = 0;
    int net = 0;
};

/// Integer bookkeeping of the canonical class: each exceptional divisor
/// contributes its base discrepancy minus the twist removed along it.
struct DiscrepancyLedger {
    std::vector<LedgerEntry> entries;

    void record(std::string label, int base_discrepancy, int twist_k) {
        entries.push_back({std::move(label), base_discrepancy, twist_k, base_discrepancy - twist_k});
    }
    bool crepant() const {
        for (const auto& e : entries)
            if (e.net != 0) return false;
        return true;
    }
    int total() const {
        int t = 0;
        for (const auto& e : entries) t += e.net;
        return t;
    }
};

/// Ledger entry for minimalizing along a divisor of the original base (no blow-up).
inline LedgerEntry base_divisor_twist(const std::string& label, unsigned k) {
    return {label, 0, static_cast<int>(k), -static_cast<int>(k)};
}

enum class ResolutionStatus { Resolved, RecursionLimit, NonRationalCenter };

inline const char* to_string(ResolutionStatus s) {
    switch (s) {
        case ResolutionStatus::Resolved: return "Resolved";
        case ResolutionStatus::RecursionLimit: return "RecursionLimit";
        case ResolutionStatus::NonRationalCenter: return "NonRationalCenter";
    }
    return "?";
}

struct ResolutionTree {
    WeierstrassChart root;
    Point root_point;
    IsolationResult root_isolation;
    std::vector<BlowupStep> steps;
    std::vector<IsolationResult> center_checks;  // isolation of each recursion center
    DiscrepancyLedger ledger;
    std::vector<SurfaceReport> surfaces;
    ResolutionStatus status = ResolutionStatus::Resolved;

    std::size_t depth() const { return steps.size(); }
    const SurfaceReport& final_surface() const { return surfaces.back(); }
};

/// Raised when resolution is asked to start at a point that is not an isolated (4,6,12) fiber.
class NotIsolatedAt : public NotIsolated {
   public:
    explicit NotIsolatedAt(IsolationResult r) : NotIsolated(describe(r)), result_(std::move(r)) {}
    const IsolationResult& result() const { return result_; }

   private:
    static std::string describe(const IsolationResult& r) {
        std::ostringstream os;
        os << "not an isolated (4,6,12) fiber: point orders " << r.point_orders.str();
        for (const auto& d : r.divisors)
            if (d.through_point) os << "; " << format(d.divisor) << " " << d.orders.str();
        return os.str();
    }
    IsolationResult result_;
};

inline constexpr unsigned kDefaultRecursionLimit = 16;

/**
 * Blows up the base at p, minimalizes along the exceptional curve and extracts
 * the elliptic surface over it. While that surface still carries a fiber reaching
 * (4,6,12) at a rational point, repeats at that point in the chart containing it.
 */
inline ResolutionTree resolve_isolated(const WeierstrassChart& m, const Point& p,
                                       std::span<const RatPoly> candidate_divisors,
                                       unsigned recursion_limit = kDefaultRecursionLimit) {
    if (recursion_limit == 0) throw DegenerateArgument("recursion limit must be positive");
    IsolationResult iso = is_isolated_46_12(m, p, candidate_divisors);
    if (!iso.isolated) throw NotIsolatedAt(iso);

    ResolutionTree tree{m, p, iso, {}, {}, {}, {}, ResolutionStatus::Resolved};
    WeierstrassChart model = m;
    Point center = p;
    for (unsigned depth = 1;; ++depth) {
        BlowupStep step = blow_up(model, center, depth);
        SurfaceReport surf = extract_surface(step);
        tree.ledger.record(step.label, step.base_discrepancy, static_cast<int>(step.twist_k));
        tree.steps.push_back(step);
        tree.surfaces.push_back(surf);

        if (!surf.has_46_12_point) {
            tree.status = ResolutionStatus::Resolved;
            break;
        }
        const FiberPlace& off = *surf.offending_point;
        if (off.kind == FiberPlace::Kind::Factor) {
            tree.status = ResolutionStatus::NonRationalCenter;
            break;
        }
        if (depth >= recursion_limit) {
            tree.status = ResolutionStatus::RecursionLimit;
            break;
        }
        if (off.kind == FiberPlace::Kind::Rational) {
            model = step.chart_u;
            center = {{step.u_coordinate(), off.point}, {step.u_exceptional(), 0}};
        } else {
            model = step.chart_v;
            center = {{step.v_exceptional(), 0}, {step.v_coordinate(), 0}};
        }
        const RatPoly& exc = model.exceptional_divisors().front().divisor;
        IsolationResult check = is_isolated_46_12(model, center, std::span<const RatPoly>(&exc, 1));
        tree.center_checks.push_back(check);
        if (!check.isolated) throw NotIsolatedAt(check);
    }
    return tree;
}

inline const DiscrepancyLedger& ledger_of(const ResolutionTree& tree) { return tree.ledger; }

}  // namespace ellflop
