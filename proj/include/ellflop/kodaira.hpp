#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "order.hpp"

namespace ellflop {

/// Orders of vanishing (f, g, Delta) at a point or along a divisor.
struct OrderTriple {
    Order a, b, d;

    /// Delta = 4f^3 + 27g^2 forces d = min(3a, 2b) when 3a != 2b and d >= 3a otherwise.
    bool consistent() const {
        if (d.is_infinite()) return false;
        Order three_a = a.is_infinite() ? a : Order(3 * a.value());
        Order two_b = b.is_infinite() ? b : Order(2 * b.value());
        if (three_a != two_b) return d == std::min(three_a, two_b);
        return d >= three_a;
    }

    std::string str() const { return "(" + a.str() + "," + b.str() + "," + d.str() + ")"; }
    friend bool operator==(const OrderTriple&, const OrderTriple&) = default;
};

enum class FiberType { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar, NonKodaira };

/// A classified fiber. `index` is n for In and In*, zero otherwise.
struct KodairaFiber {
    OrderTriple triple;
    FiberType type = FiberType::I0;
    unsigned index = 0;
    unsigned components = 1;  // 0 for NonKodaira
    std::string root_lattice;
    unsigned euler = 0;

    bool is_kodaira() const { return type != FiberType::NonKodaira; }

    /// "I0", "I3", "II", "I0*", "I2*", "IV*", ..., "NonKodaira".
    std::string label() const {
        switch (type) {
            case FiberType::I0: return "I0";
            case FiberType::In: return "I" + std::to_string(index);
            case FiberType::II: return "II";
            case FiberType::III: return "III";
            case FiberType::IV: return "IV";
            case FiberType::I0star: return "I0*";
            case FiberType::Instar: return "I" + std::to_string(index) + "*";
            case FiberType::IVstar: return "IV*";
            case FiberType::IIIstar: return "III*";
            case FiberType::IIstar: return "II*";
            case FiberType::NonKodaira: return "NonKodaira";
        }
        return "?";
    }
    friend bool operator==(const KodairaFiber&, const KodairaFiber&) = default;
};

/// Closed interval of orders; `hi` may be infinite.
struct OrderRange {
    unsigned lo;
    Order hi;
    constexpr bool contains(Order o) const { return o >= Order(lo) && o <= hi; }
};

/// One row of the classification table. In and In* take n from d - d_offset.
struct KodairaRow {
    OrderRange a, b, d;
    FiberType type;
    unsigned d_offset = 0;
};

namespace kodaira_detail {
constexpr Order kInf = Order::infinity();
}

/// The short-Weierstrass order table over the complex numbers.
inline constexpr std::array<KodairaRow, 12> kKodairaTable{{
    {{0, kodaira_detail::kInf}, {0, kodaira_detail::kInf}, {0, 0}, FiberType::I0},
    {{0, 0}, {0, 0}, {1, kodaira_detail::kInf}, FiberType::In, 0},
    {{1, kodaira_detail::kInf}, {1, 1}, {2, 2}, FiberType::II},
    {{1, 1}, {2, kodaira_detail::kInf}, {3, 3}, FiberType::III},
    {{2, kodaira_detail::kInf}, {2, 2}, {4, 4}, FiberType::IV},
    {{2, kodaira_detail::kInf}, {3, 3}, {6, 6}, FiberType::I0star},
    {{2, 2}, {3, kodaira_detail::kInf}, {6, 6}, FiberType::I0star},
    {{2, 2}, {3, 3}, {7, kodaira_detail::kInf}, FiberType::Instar, 6},
    {{3, kodaira_detail::kInf}, {4, 4}, {8, 8}, FiberType::IVstar},
    {{3, 3}, {5, kodaira_detail::kInf}, {9, 9}, FiberType::IIIstar},
    {{4, kodaira_detail::kInf}, {5, 5}, {10, 10}, FiberType::IIstar},
    {{4, kodaira_detail::kInf}, {6, kodaira_detail::kInf}, {12, kodaira_detail::kInf}, FiberType::NonKodaira},
}};

/// Fills component count, root lattice and Euler number for a type.
inline KodairaFiber make_fiber(const OrderTriple& t, FiberType type, unsigned index) {
    KodairaFiber k{t, type, index, 1, "0", t.d.is_finite() ? t.d.value() : 0};
    switch (type) {
        case FiberType::I0: k.components = 1; k.root_lattice = "0"; break;
        case FiberType::In:
            k.components = index;
            k.root_lattice = index <= 1 ? "0" : "A" + std::to_string(index - 1);
            break;
        case FiberType::II: k.components = 1; k.root_lattice = "0"; break;
        case FiberType::III: k.components = 2; k.root_lattice = "A1"; break;
        case FiberType::IV: k.components = 3; k.root_lattice = "A2"; break;
        case FiberType::I0star: k.components = 5; k.root_lattice = "D4"; break;
        case FiberType::Instar: k.components = index + 5; k.root_lattice = "D" + std::to_string(index + 4); break;
        case FiberType::IVstar: k.components = 7; k.root_lattice = "E6"; break;
        case FiberType::IIIstar: k.components = 8; k.root_lattice = "E7"; break;
        case FiberType::IIstar: k.components = 9; k.root_lattice = "E8"; break;
        case FiberType::NonKodaira: k.components = 0; k.root_lattice = "none"; break;
    }
    return k;
}

/// Table lookup against an explicit table (first matching row wins).
inline KodairaFiber classify_with(const OrderTriple& t, std::span<const KodairaRow> table) {
    if (!t.consistent()) throw MalformedTriple("inconsistent order triple " + t.str());
    for (const auto& row : table) {
        if (row.a.contains(t.a) && row.b.contains(t.b) && row.d.contains(t.d)) {
            unsigned index = 0;
            if (row.type == FiberType::In || row.type == FiberType::Instar) index = t.d.value() - row.d_offset;
            return make_fiber(t, row.type, index);
        }
    }
    throw MalformedTriple("no Kodaira row matches " + t.str());
}

inline KodairaFiber classify(const OrderTriple& t) { return classify_with(t, kKodairaTable); }

/// a >= 4 and b >= 6.
inline bool meets_46_threshold(const OrderTriple& t) { return t.a >= Order(4) && t.b >= Order(6); }

/// (a = 4 and b >= 6, or a >= 4 and b = 6) with d = 12.
inline bool is_46_12_class(const OrderTriple& t) {
    bool shape = (t.a == Order(4) && t.b >= Order(6)) || (t.a >= Order(4) && t.b == Order(6));
    return shape && t.d == Order(12);
}

/// (a, b, d) -> (a - 4, b - 6, d - 12); precondition: meets_46_threshold(t) and d >= 12.
inline OrderTriple reduce_46_12(const OrderTriple& t) {
    auto sub = [](Order o, unsigned k) { return o.is_infinite() ? o : Order(o.value() - k); };
    return {sub(t.a, 4), sub(t.b, 6), sub(t.d, 12)};
}

struct TotalityReport {
    bool ok = true;
    unsigned checked = 0;
    std::optional<OrderTriple> first_failure;
    std::string message;
};

/// Scans every consistent triple with a, b <= max_ab and d <= max_d and checks that
/// exactly one fiber type matches and the fixed component/Euler data hold.
inline TotalityReport check_totality(std::span<const KodairaRow> table, unsigned max_ab = 8, unsigned max_d = 24) {
    TotalityReport rep;
    auto fail = [&](const OrderTriple& t, const std::string& why) {
        if (rep.ok) {
            rep.ok = false;
            rep.first_failure = t;
            rep.message = "totality check failed at " + t.str() + ": " + why;
        }
    };
    for (unsigned a = 0; a <= max_ab; ++a)
        for (unsigned b = 0; b <= max_ab; ++b)
            for (unsigned d = 0; d <= max_d; ++d) {
                OrderTriple t{a, b, d};
                if (!t.consistent()) continue;
                ++rep.checked;
                std::optional<FiberType> seen;
                for (const auto& row : table) {
                    if (!(row.a.contains(t.a) && row.b.contains(t.b) && row.d.contains(t.d))) continue;
                    if (seen && *seen != row.type) fail(t, "rows disagree");
                    seen = row.type;
                }
                if (!seen) {
                    fail(t, "no row matches");
                    continue;
                }
                KodairaFiber k = classify_with(t, table);
                if (k.euler != d) fail(t, "euler != d");
                if ((*seen == FiberType::NonKodaira) != meets_46_threshold(t)) fail(t, "NonKodaira iff a>=4, b>=6");
            }
    return rep;
}

/// Fixed-format listing used by the CLI's --print-kodaira-table.
inline std::string kodaira_table_text() {
    std::ostringstream os;
    os << "ord(f)  ord(g)  ord(D)  type        components  lattice  euler\n";
    auto range = [](const OrderRange& r) {
        if (r.hi == Order(r.lo)) return std::to_string(r.lo);
        if (r.hi.is_infinite()) return ">=" + std::to_string(r.lo);
        return std::to_string(r.lo) + ".." + r.hi.str();
    };
    auto pad = [](std::string s, std::size_t w) {
        s.resize(std::max(s.size(), w), ' ');
        return s;
    };
    for (const auto& row : kKodairaTable) {
        std::string type, comps, lattice, euler;
        switch (row.type) {
            case FiberType::I0: type = "I0"; comps = "1"; lattice = "0"; euler = "0"; break;
            case FiberType::In: type = "In (n=d)"; comps = "n"; lattice = "A(n-1)"; euler = "n"; break;
            case FiberType::Instar: type = "In* (n=d-6)"; comps = "n+5"; lattice = "D(n+4)"; euler = "n+6"; break;
            default: {
                KodairaFiber k = make_fiber({row.a.lo, row.b.lo, row.d.lo}, row.type, 0);
                type = k.label();
                comps = std::to_string(k.components);
                lattice = k.root_lattice;
                euler = std::to_string(row.d.lo);
            }
        }
        if (row.type == FiberType::NonKodaira) euler = "d";
        os << pad(range(row.a), 8) << pad(range(row.b), 8) << pad(range(row.d), 8) << pad(type, 12)
           << pad(comps, 12) << pad(lattice, 9) << euler << "\n";
    }
    return os.str();
}

}  // namespace ellflop
