#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kodaira.hpp"
#include "rational.hpp"
#include "surface.hpp"

namespace ellflop {

/// A count that may be infinite or not determined.
struct Count {
    enum class Kind { Finite, Infinite, Unknown };
    Kind kind = Kind::Unknown;
    unsigned long value = 0;

    static Count finite(unsigned long v) { return {Kind::Finite, v}; }
    static Count infinite() { return {Kind::Infinite, 0}; }
    static Count unknown() { return {Kind::Unknown, 0}; }
    bool is_finite() const { return kind == Kind::Finite; }
    std::string str() const {
        switch (kind) {
            case Kind::Finite: return std::to_string(value);
            case Kind::Infinite: return "Infinite";
            case Kind::Unknown: return "Unknown";
        }
        return "?";
    }
    friend bool operator==(const Count&, const Count&) = default;
};

inline Count operator+(const Count& x, const Count& y) {
    if (x.kind == Count::Kind::Unknown || y.kind == Count::Kind::Unknown) return Count::unknown();
    if (x.kind == Count::Kind::Infinite || y.kind == Count::Kind::Infinite) return Count::infinite();
    return Count::finite(x.value + y.value);
}

/// Shioda-Tate: rank MW = 8 - sum (m_v - 1) over singular fibers of a rational elliptic surface.
inline unsigned shioda_tate_rank(const FiberConfiguration& config) {
    if (config.places.empty()) throw InconsistentConfiguration("empty fiber configuration");
    if (!euler_check(config))
        throw InconsistentConfiguration("Euler numbers sum to " + std::to_string(config.total_delta_degree) +
                                        ", not 12");
    long rank = 8;
    for (const auto& p : config.places) {
        if (!p.fiber.is_kodaira())
            throw InconsistentConfiguration("fiber at " + p.location() + " is not a Kodaira fiber");
        rank -= static_cast<long>(p.fiber.components - 1) * p.points;
    }
    if (rank < 0) throw InconsistentConfiguration("negative Mordell-Weil rank " + std::to_string(rank));
    return static_cast<unsigned>(rank);
}

/// Representative fiber for a label such as "I3", "I0*", "IV*". Goes through classify().
inline KodairaFiber fiber_from_label(const std::string& label) {
    static const std::map<std::string, OrderTriple> fixed{
        {"II", {1, 1, 2}},  {"III", {1, 2, 3}},  {"IV", {2, 2, 4}},  {"IV*", {3, 4, 8}},
        {"III*", {3, 5, 9}}, {"II*", {4, 5, 10}},
    };
    if (auto it = fixed.find(label); it != fixed.end()) return classify(it->second);
    std::smatch m;
    static const std::regex in(R"(I(\d+)(\*?))");
    if (std::regex_match(label, m, in)) {
        unsigned n = static_cast<unsigned>(std::stoul(m[1]));
        if (m[2].length() == 0) return classify({0, 0, n});
        return classify({2, 3, 6 + n});
    }
    throw Error("unknown fiber label '" + label + "'");
}

/// Configuration built from fiber labels, one rational place per label.
inline FiberConfiguration configuration_from_labels(const std::vector<std::string>& labels) {
    std::vector<FiberPlace> places;
    for (const auto& l : labels) {
        FiberPlace p;
        p.fiber = fiber_from_label(l);
        p.point = Rational(static_cast<long>(places.size()));
        p.coordinate = "u";
        places.push_back(std::move(p));
    }
    return make_configuration(std::move(places));
}

struct ExtremalEntry {
    std::vector<std::string> config;  // sorted fiber labels
    std::string torsion;              // "1", "Z/2", "Z/2 x Z/2", ...
    unsigned torsion_order = 1;
    std::string source;
};

/// Extremal rational elliptic surfaces and their torsion sections.
/// Record format: `config := L1, L2, ...; torsion := G; source := text`. '#' starts a comment.
inline constexpr const char* kExtremalTableText = R"(# extremal rational elliptic surfaces, table version 1
config := I0*, I0*; torsion := Z/2 x Z/2; source := Oguiso-Shioda classification (anchored: 4 sections)
config := II*, II; torsion := 1; source := Miranda-Persson / Oguiso-Shioda classification
config := III*, III; torsion := Z/2; source := Miranda-Persson / Oguiso-Shioda classification
config := IV*, IV; torsion := Z/3; source := Miranda-Persson / Oguiso-Shioda classification
config := II*, I1, I1; torsion := 1; source := Miranda-Persson / Oguiso-Shioda classification
config := III*, I2, I1; torsion := Z/2; source := Miranda-Persson / Oguiso-Shioda classification
config := IV*, I3, I1; torsion := Z/3; source := Miranda-Persson / Oguiso-Shioda classification
config := I4*, I1, I1; torsion := Z/2; source := Miranda-Persson / Oguiso-Shioda classification
config := I1*, I4, I1; torsion := Z/4; source := Miranda-Persson / Oguiso-Shioda classification
config := I2*, I2, I2; torsion := Z/2 x Z/2; source := Miranda-Persson / Oguiso-Shioda classification
config := I9, I1, I1, I1; torsion := Z/3; source := Miranda-Persson / Oguiso-Shioda classification
config := I8, I2, I1, I1; torsion := Z/4; source := Miranda-Persson / Oguiso-Shioda classification
config := I5, I5, I1, I1; torsion := Z/5; source := Miranda-Persson / Oguiso-Shioda classification
config := I6, I3, I2, I1; torsion := Z/6; source := Miranda-Persson / Oguiso-Shioda classification
config := I4, I4, I2, I2; torsion := Z/4 x Z/2; source := Miranda-Persson / Oguiso-Shioda classification
config := I3, I3, I3, I3; torsion := Z/3 x Z/3; source := Miranda-Persson / Oguiso-Shioda classification
)";

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline unsigned group_order(const std::string& g, std::size_t line) {
    if (g == "1") return 1;
    static const std::regex factor(R"(\s*Z/(\d+)\s*)");
    unsigned order = 1;
    std::stringstream ss(g);
    std::string part;
    while (std::getline(ss, part, 'x')) {
        std::smatch m;
        if (!std::regex_match(part, m, factor))
            throw Error("line " + std::to_string(line) + ": bad group label '" + g + "'");
        order *= static_cast<unsigned>(std::stoul(m[1]));
    }
    return order;
}

}  // namespace detail

/// Parses the extremal table and checks that every entry has Euler sum 12 and rank 0.
inline std::vector<ExtremalEntry> parse_extremal_table(const std::string& text) {
    std::vector<ExtremalEntry> out;
    std::stringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::map<std::string, std::string> fields;
        std::stringstream rec(line);
        std::string field;
        while (std::getline(rec, field, ';')) {
            auto eq = field.find(":=");
            if (eq == std::string::npos)
                throw Error("line " + std::to_string(lineno) + ": expected 'key := value'");
            fields[detail::trim(field.substr(0, eq))] = detail::trim(field.substr(eq + 2));
        }
        for (const char* key : {"config", "torsion", "source"})
            if (!fields.count(key))
                throw Error("line " + std::to_string(lineno) + ": missing '" + key + "'");
        ExtremalEntry e;
        std::stringstream cs(fields["config"]);
        std::string label;
        while (std::getline(cs, label, ',')) e.config.push_back(detail::trim(label));
        std::sort(e.config.begin(), e.config.end());
        e.torsion = fields["torsion"];
        e.torsion_order = detail::group_order(e.torsion, lineno);
        e.source = fields["source"];

        FiberConfiguration c = configuration_from_labels(e.config);
        if (shioda_tate_rank(c) != 0)
            throw InconsistentConfiguration("extremal table line " + std::to_string(lineno) +
                                            ": configuration has positive rank");
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<ExtremalEntry> load_extremal_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open extremal table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_extremal_table(ss.str());
}

inline const std::vector<ExtremalEntry>& default_extremal_table() {
    static const std::vector<ExtremalEntry> table = parse_extremal_table(kExtremalTableText);
    return table;
}

struct TorsionResult {
    std::optional<std::string> structure;
    std::optional<unsigned> order;
    std::string note;
    std::string source;
};

/// Torsion of the section group. Definitive only for listed extremal configurations.
inline TorsionResult torsion_lookup(const FiberConfiguration& config,
                                    const std::vector<ExtremalEntry>& table = default_extremal_table()) {
    TorsionResult r;
    if (shioda_tate_rank(config) > 0) {
        r.note = "generically trivial; not determined for positive rank";
        return r;
    }
    std::vector<std::string> labels = config.labels();
    for (const auto& e : table)
        if (e.config == labels) {
            r.structure = e.torsion;
            r.order = e.torsion_order;
            r.source = e.source;
            r.note = "extremal table";
            return r;
        }
    r.note = "configuration not in the extremal table";
    return r;
}

enum class Dichotomy { FiniteFlopCandidates, InfiniteFlopCandidates };

inline const char* to_string(Dichotomy d) {
    return d == Dichotomy::FiniteFlopCandidates ? "FiniteFlopCandidates" : "InfiniteFlopCandidates";
}

struct FloppingCensus {
    Count sections;
    unsigned fiber_components = 0;
    Count total;
};

struct MWReport {
    unsigned rank = 0;
    TorsionResult torsion;
    Count section_count;
    FloppingCensus census;
    Dichotomy dichotomy = Dichotomy::FiniteFlopCandidates;
    std::string rationale;
};

inline constexpr unsigned kDisjointSectionCap = 240;

/// Finite iff the rank vanishes; positive rank gives infinitely many flopping candidates.
inline std::pair<Dichotomy, std::string> dichotomy(unsigned rank, const TorsionResult& torsion) {
    std::string cap = " At most " + std::to_string(kDisjointSectionCap) +
                      " sections are disjoint from a fixed section.";
    if (rank > 0)
        return {Dichotomy::InfiniteFlopCandidates,
                "rank " + std::to_string(rank) +
                    " > 0: infinitely many sections, hence infinitely many flopping curves; conversely infinitely "
                    "many flopping curves force MW(Y/T) to have positive rank." + cap};
    std::string text = "rank 0: MW(Y/T) finite, so only finitely many flopping curves.";
    if (!torsion.order) text += " Caveat: torsion not determined, section count unknown.";
    return {Dichotomy::FiniteFlopCandidates, text + cap};
}

/// Flopping curves are sections or fiber components of the surface.
inline FloppingCensus flopping_census(const FiberConfiguration& config, const Count& sections) {
    FloppingCensus c;
    c.sections = sections;
    for (const auto& p : config.places) c.fiber_components += p.fiber.components * p.points;
    c.total = sections + Count::finite(c.fiber_components);
    return c;
}

inline MWReport mordell_weil(const FiberConfiguration& config,
                             const std::vector<ExtremalEntry>& table = default_extremal_table()) {
    MWReport r;
    r.rank = shioda_tate_rank(config);
    r.torsion = torsion_lookup(config, table);
    if (r.rank > 0)
        r.section_count = Count::infinite();
    else if (r.torsion.order)
        r.section_count = Count::finite(*r.torsion.order);
    else
        r.section_count = Count::unknown();
    r.census = flopping_census(config, r.section_count);
    std::tie(r.dichotomy, r.rationale) = dichotomy(r.rank, r.torsion);
    return r;
}

struct ModelCountBounds {
    unsigned lower_any = 2;
    unsigned lower_generic = 9;
    BigInt lower_product;
    std::optional<BigInt> upper_extremal;  // empty means not applicable
    std::vector<std::string> warnings;
};

/// Terminal-model count bounds for n surfaces sharing one census: 9^n below, n * C(total, 9) * 2^9 above.
inline ModelCountBounds model_count_bounds(unsigned n_surfaces, const FloppingCensus& census) {
    if (n_surfaces == 0) throw DegenerateArgument("n_surfaces must be positive");
    ModelCountBounds b;
    b.lower_product = big_pow(9, n_surfaces);
    if (census.total.is_finite()) {
        b.upper_extremal = BigInt(n_surfaces) * binomial(census.total.value, 9) * big_pow(2, 9);
        if (b.lower_product > *b.upper_extremal)
            b.warnings.push_back("lower bound 9^" + std::to_string(n_surfaces) + " = " + b.lower_product.get_str() +
                                 " exceeds the upper bound " + b.upper_extremal->get_str() +
                                 " (formulas reproduced as stated; their reconciliation is open)");
    }
    return b;
}

}  // namespace ellflop
