#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mordell_weil.hpp"
#include "polynomial_io.hpp"
#include "resolve.hpp"
#include "weierstrass.hpp"

#ifndef ELLFLOP_VERSION
#define ELLFLOP_VERSION "1.0.0"
#endif

namespace ellflop {

using json = nlohmann::json;

/// Invalid job file: bad JSON, schema violation or an unparsable polynomial.
class InputError : public Error {
    using Error::Error;
};

struct JobSpec {
    std::vector<std::string> variables;
    std::string f_text, g_text;
    RatPoly f, g;
    std::vector<Point> points;
    std::vector<std::string> divisor_texts;
    std::vector<RatPoly> divisors;
    unsigned recursion_limit = kDefaultRecursionLimit;
    std::optional<unsigned> n_surfaces;
    json echo;
};

namespace report_detail {

inline Rational coordinate(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return Rational::from_string(v.get<std::string>());
        } catch (const std::exception& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    throw InputError(where + ": coordinates must be integers or \"a/b\" strings");
}

inline RatPoly poly(const json& v, const std::vector<std::string>& vars, const std::string& where) {
    if (!v.is_string()) throw InputError(where + ": expected a polynomial string");
    try {
        return parse(v.get<std::string>(), vars);
    } catch (const Error& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline json order_json(const Order& o) {
    if (o.is_infinite()) return "inf";
    return o.value();
}

inline json triple_json(const OrderTriple& t) {
    return {{"a", order_json(t.a)}, {"b", order_json(t.b)}, {"d", order_json(t.d)}};
}

inline json point_json(const Point& p, const std::vector<std::string>& vars) {
    json out = json::array();
    for (const auto& v : vars) out.push_back(p.at(v).str());
    return out;
}

inline json fiber_json(const KodairaFiber& k) {
    return {{"type", k.label()},
            {"orders", triple_json(k.triple)},
            {"components", k.components},
            {"root_lattice", k.root_lattice},
            {"euler", k.euler}};
}

inline json chart_json(const WeierstrassChart& m) {
    json exc = json::array();
    for (const auto& e : m.exceptional_divisors()) exc.push_back({{"label", e.label}, {"divisor", format(e.divisor)}});
    json tw = json::array();
    for (const auto& t : m.twist_log()) tw.push_back({{"divisor", t.divisor_label}, {"k", t.k}});
    return {{"name", m.name()}, {"variables", m.variables()}, {"f", format(m.f())}, {"g", format(m.g())},
            {"delta", format(m.delta())}, {"exceptional", exc}, {"twists", tw}};
}

inline json isolation_json(const IsolationResult& r) {
    json divs = json::array();
    for (const auto& d : r.divisors)
        divs.push_back({{"divisor", format(d.divisor)},
                        {"automatic", d.automatic},
                        {"through_point", d.through_point},
                        {"orders", triple_json(d.orders)},
                        {"meets_threshold", d.meets_threshold}});
    return {{"isolated", r.isolated},
            {"point_orders", triple_json(r.point_orders)},
            {"point_meets_threshold", r.point_meets_threshold},
            {"point_in_46_12_class", r.point_in_46_12_class},
            {"divisors", divs}};
}

inline json place_json(const FiberPlace& p) {
    static const char* kinds[] = {"rational", "infinity", "factor"};
    return {{"location", p.location()},
            {"kind", kinds[static_cast<int>(p.kind)]},
            {"points", p.points},
            {"fiber", fiber_json(p.fiber)}};
}

inline json surface_json(const SurfaceReport& s) {
    json places = json::array();
    for (const auto& p : s.config.places) places.push_back(place_json(p));
    RationalityVerdict v = rationality_verdict(s);
    return {{"label", s.label},
            {"f_restricted", format(s.f_restricted)},
            {"g_restricted", format(s.g_restricted)},
            {"delta_restricted", format(s.delta_restricted)},
            {"f_at_infinity", format(s.f_at_infinity)},
            {"g_at_infinity", format(s.g_at_infinity)},
            {"twist_k", s.twist_k},
            {"places", places},
            {"configuration", s.config.labels()},
            {"total_delta_degree", s.config.total_delta_degree},
            {"euler_sum_12", euler_check(s.config)},
            {"rational", s.rational},
            {"has_46_12_point", s.has_46_12_point},
            {"offending_point", s.offending_point ? json(s.offending_point->location()) : json(nullptr)},
            {"f_degree_ok", s.f_degree_ok},
            {"g_degree_ok", s.g_degree_ok},
            {"zeros_of_f", order_json(s.zeros_of_f)},
            {"zeros_of_g", order_json(s.zeros_of_g)},
            {"isotrivial", s.isotrivial},
            {"verdict", v.text}};
}

inline json count_json(const Count& c) { return c.str(); }

inline json mw_json(const MWReport& r) {
    return {{"rank", r.rank},
            {"torsion_structure", r.torsion.structure ? json(*r.torsion.structure) : json("Unknown")},
            {"torsion_order", r.torsion.order ? json(std::to_string(*r.torsion.order)) : json("Unknown")},
            {"torsion_note", r.torsion.note},
            {"torsion_source", r.torsion.source},
            {"section_count", count_json(r.section_count)},
            {"census",
             {{"sections", count_json(r.census.sections)},
              {"fiber_components", r.census.fiber_components},
              {"total", count_json(r.census.total)}}},
            {"dichotomy", to_string(r.dichotomy)},
            {"rationale", r.rationale}};
}

inline json bounds_json(const ModelCountBounds& b, unsigned n) {
    return {{"n_surfaces", n},
            {"lower_any", std::to_string(b.lower_any)},
            {"lower_generic", std::to_string(b.lower_generic)},
            {"lower_product", b.lower_product.get_str()},
            {"upper_extremal", b.upper_extremal ? json(b.upper_extremal->get_str()) : json("NotApplicable")},
            {"footnote",
             "upper bound n*C(curves,9)*2^9 and lower bound 9^n are reproduced as stated; with independent "
             "surfaces an exponent in n would be expected, and the two formulas are not reconciled here"}};
}

inline bool point_less(const Point& x, const Point& y, const std::vector<std::string>& vars) {
    for (const auto& v : vars) {
        if (x.at(v) < y.at(v)) return true;
        if (y.at(v) < x.at(v)) return false;
    }
    return false;
}

}  // namespace report_detail

/// Parses a job document. `origin` names the source in error messages.
inline JobSpec parse_job(const std::string& text, const std::string& origin = "<job>") {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw InputError(origin + ": job must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::vector<std::string> known{"variables", "f", "g", "points", "divisors", "n_surfaces",
                                                    "recursion_limit"};
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw InputError(origin + ": unknown field '" + it.key() + "'");
    }
    JobSpec s;
    s.echo = j;
    auto where = [&](const std::string& field) { return origin + ": field '" + field + "'"; };

    if (!j.contains("variables") || !j["variables"].is_array() || j["variables"].size() != 2)
        throw InputError(where("variables") + ": expected two variable names");
    for (const auto& v : j["variables"]) {
        if (!v.is_string()) throw InputError(where("variables") + ": names must be strings");
        s.variables.push_back(v.get<std::string>());
    }
    if (s.variables[0] == s.variables[1]) throw InputError(where("variables") + ": names must differ");
    for (const char* key : {"f", "g"})
        if (!j.contains(key)) throw InputError(where(key) + ": missing");
    s.f_text = j["f"].is_string() ? j["f"].get<std::string>() : "";
    s.g_text = j["g"].is_string() ? j["g"].get<std::string>() : "";
    s.f = report_detail::poly(j["f"], s.variables, where("f"));
    s.g = report_detail::poly(j["g"], s.variables, where("g"));

    if (j.contains("points")) {
        if (!j["points"].is_array()) throw InputError(where("points") + ": expected a list");
        for (std::size_t i = 0; i < j["points"].size(); ++i) {
            const json& p = j["points"][i];
            std::string w = where("points[" + std::to_string(i) + "]");
            if (!p.is_array() || p.size() != 2) throw InputError(w + ": expected a coordinate pair");
            s.points.push_back({{s.variables[0], report_detail::coordinate(p[0], w)},
                                {s.variables[1], report_detail::coordinate(p[1], w)}});
        }
    }
    if (j.contains("divisors")) {
        if (!j["divisors"].is_array()) throw InputError(where("divisors") + ": expected a list");
        for (std::size_t i = 0; i < j["divisors"].size(); ++i) {
            std::string w = where("divisors[" + std::to_string(i) + "]");
            s.divisors.push_back(report_detail::poly(j["divisors"][i], s.variables, w));
            s.divisor_texts.push_back(j["divisors"][i].get<std::string>());
            if (s.divisors.back().is_constant()) throw InputError(w + ": divisor must be non-constant");
        }
    }
    auto positive = [&](const char* key) -> std::optional<unsigned> {
        if (!j.contains(key)) return std::nullopt;
        if (!j[key].is_number_integer() || j[key].get<long>() <= 0)
            throw InputError(where(key) + ": expected a positive integer");
        return static_cast<unsigned>(j[key].get<long>());
    };
    s.n_surfaces = positive("n_surfaces");
    if (auto r = positive("recursion_limit")) s.recursion_limit = *r;
    return s;
}

inline JobSpec load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_job(ss.str(), path);
}

/// Exit statuses shared by the CLI and the acceptance checks.
enum ExitCode { kExitOk = 0, kExitInput = 2, kExitPrecondition = 3, kExitLimit = 4 };

struct Report {
    json data;
    int exit_code = kExitOk;
};

namespace report_detail {

inline json header(const std::string& command, const JobSpec& s) {
    return {{"version", std::string("ellflop ") + ELLFLOP_VERSION}, {"command", command}, {"job", s.echo}};
}

inline std::vector<Point> sorted_points(const JobSpec& s) {
    std::vector<Point> pts = s.points;
    std::stable_sort(pts.begin(), pts.end(),
                     [&](const Point& a, const Point& b) { return point_less(a, b, s.variables); });
    return pts;
}

}  // namespace report_detail

/// Orders and Kodaira types at every point and along every divisor of the job.
inline Report cmd_classify(const JobSpec& s) {
    using namespace report_detail;
    WeierstrassChart m = make_model(s.f, s.g, s.variables);
    Report rep;
    rep.data = header("classify", s);
    rep.data["model"] = chart_json(m);
    json warnings = json::array();

    json pts = json::array();
    for (const auto& p : sorted_points(s)) {
        OrderTriple t = orders_at(m, p);
        KodairaFiber k = classify(t);
        pts.push_back({{"point", point_json(p, s.variables)},
                       {"fiber", fiber_json(k)},
                       {"meets_46_threshold", meets_46_threshold(t)},
                       {"in_46_12_class", is_46_12_class(t)}});
    }
    rep.data["points"] = pts;

    json divs = json::array();
    for (const auto& d : s.divisors) {
        OrderTriple t = orders_along(m, d);
        json entry{{"divisor", format(d)}, {"fiber", fiber_json(classify(t))}, {"meets_46_threshold", meets_46_threshold(t)}};
        if (meets_46_threshold(t)) {
            Minimalization mm = minimalize_along(m, d, format(d));
            entry["minimalized"] = {{"k", mm.k}, {"f", format(mm.model.f())}, {"g", format(mm.model.g())}};
        }
        divs.push_back(entry);
    }
    rep.data["divisors"] = divs;

    MinimalityResult mr = is_minimal(m, s.divisors);
    json checked = json::array();
    for (const auto& c : mr.checked) checked.push_back(format(c));
    rep.data["minimality"] = {{"minimal", mr.minimal},
                              {"witness", mr.witness ? json(format(*mr.witness)) : json(nullptr)},
                              {"checked", checked}};
    if (!mr.minimal) warnings.push_back("model is not minimal along " + format(*mr.witness));
    rep.data["warnings"] = warnings;
    return rep;
}

/// Resolves every job point, reporting the tree, surfaces, Mordell-Weil data and bounds.
inline Report cmd_resolve(const JobSpec& s, const std::vector<ExtremalEntry>& table = default_extremal_table()) {
    using namespace report_detail;
    WeierstrassChart m = make_model(s.f, s.g, s.variables);
    Report rep;
    rep.data = header("resolve", s);
    rep.data["model"] = chart_json(m);
    json warnings = json::array();
    json pts = json::array();
    unsigned n = s.n_surfaces.value_or(1);

    for (const auto& p : sorted_points(s)) {
        json entry{{"point", point_json(p, s.variables)}};
        std::optional<ResolutionTree> resolved;
        try {
            resolved = resolve_isolated(m, p, s.divisors, s.recursion_limit);
        } catch (const NotIsolatedAt& e) {
            entry["status"] = "NotIsolated";
            entry["isolation"] = isolation_json(e.result());
            entry["error"] = e.what();
            warnings.push_back("point " + point_json(p, s.variables).dump() + ": " + e.what());
            rep.exit_code = std::max<int>(rep.exit_code, kExitPrecondition);
            pts.push_back(entry);
            continue;
        }
        const ResolutionTree& tree = *resolved;
        entry["status"] = to_string(tree.status);
        entry["isolation"] = isolation_json(tree.root_isolation);
        entry["depth"] = tree.depth();

        json steps = json::array();
        for (std::size_t i = 0; i < tree.steps.size(); ++i) {
            const BlowupStep& st = tree.steps[i];
            steps.push_back({{"label", st.label},
                             {"depth", st.depth},
                             {"parent_chart", st.parent_chart},
                             {"center", point_json(st.center, st.parent_variables)},
                             {"pulled_orders", triple_json(st.pulled_orders_u)},
                             {"twist_k", st.twist_k},
                             {"chart_u", chart_json(st.chart_u)},
                             {"chart_v", chart_json(st.chart_v)},
                             {"charts_agree", charts_agree_on_overlap(st)}});
        }
        entry["steps"] = steps;
        json centers = json::array();
        for (const auto& c : tree.center_checks) centers.push_back(isolation_json(c));
        entry["center_checks"] = centers;
        std::vector<OrderTriple> isolated{tree.root_isolation.point_orders};
        CanonicalVerdict cv = canonical_bound_check(isolated);
        entry["canonical_bound"] = {{"met", cv.met},
                                    {"verdict", cv.text},
                                    {"assumption", "minimal model with normal-crossing discriminant (not verified)"}};

        json ledger = json::array();
        for (const auto& e : tree.ledger.entries)
            ledger.push_back(
                {{"label", e.label}, {"base_discrepancy", e.base_discrepancy}, {"twist_k", e.twist_k}, {"net", e.net}});
        entry["ledger"] = {{"entries", ledger}, {"crepant", tree.ledger.crepant()}, {"total", tree.ledger.total()}};

        json surfaces = json::array();
        for (const auto& sr : tree.surfaces) {
            surfaces.push_back(surface_json(sr));
            for (const auto& w : sr.warnings) warnings.push_back(w);
        }
        entry["surfaces"] = surfaces;

        const SurfaceReport& last = tree.final_surface();
        if (tree.status == ResolutionStatus::Resolved && euler_check(last.config)) {
            MWReport mw = mordell_weil(last.config, table);
            entry["mordell_weil"] = mw_json(mw);
            ModelCountBounds b = model_count_bounds(n, mw.census);
            entry["bounds"] = bounds_json(b, n);
            for (const auto& w : b.warnings) warnings.push_back(w);
        } else if (tree.status == ResolutionStatus::Resolved) {
            warnings.push_back(last.label + ": surface is not rational; Mordell-Weil data skipped");
        }
        if (tree.status == ResolutionStatus::RecursionLimit)
            rep.exit_code = std::max<int>(rep.exit_code, kExitLimit);
        if (tree.status == ResolutionStatus::NonRationalCenter)
            rep.exit_code = std::max<int>(rep.exit_code, kExitPrecondition);
        pts.push_back(entry);
    }
    rep.data["points"] = pts;
    rep.data["warnings"] = warnings;
    return rep;
}

/// Fixed-width human summary of a report produced by cmd_classify or cmd_resolve.
inline std::string render_text(const json& r) {
    std::ostringstream os;
    os << std::left;
    auto ord = [](const json& t) { return "(" + t["a"].dump() + "," + t["b"].dump() + "," + t["d"].dump() + ")"; };
    auto str = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto pt = [&](const json& p) { return "(" + str(p[0]) + ", " + str(p[1]) + ")"; };
    os << r["version"].get<std::string>() << "  " << r["command"].get<std::string>() << "\n";
    os << "model   f = " << str(r["model"]["f"]) << "\n        g = " << str(r["model"]["g"]) << "\n";
    os << "  Delta = " << str(r["model"]["delta"]) << "\n";

    if (r["command"] == "classify") {
        os << "\n" << std::left << std::setw(24) << "point" << std::setw(16) << "orders" << "fiber\n";
        for (const auto& p : r["points"])
            os << std::setw(24) << pt(p["point"]) << std::setw(16) << ord(p["fiber"]["orders"])
               << str(p["fiber"]["type"]) << "\n";
        if (!r["divisors"].empty()) {
            os << "\n" << std::setw(24) << "divisor" << std::setw(16) << "orders" << "fiber\n";
            for (const auto& d : r["divisors"]) {
                os << std::setw(24) << str(d["divisor"]) << std::setw(16) << ord(d["fiber"]["orders"])
                   << str(d["fiber"]["type"]) << "\n";
                if (d.contains("minimalized"))
                    os << "    minimalized k=" << d["minimalized"]["k"].dump() << ": f = " << str(d["minimalized"]["f"])
                       << ", g = " << str(d["minimalized"]["g"]) << "\n";
            }
        }
        os << "\nminimal: " << (r["minimality"]["minimal"].get<bool>() ? "yes" : "no") << "\n";
    } else {
        for (const auto& p : r["points"]) {
            os << "\npoint " << pt(p["point"]) << "  status " << str(p["status"]) << "\n";
            const json& iso = p["isolation"];
            os << "  isolation: " << (iso["isolated"].get<bool>() ? "isolated" : "not isolated") << ", orders "
               << ord(iso["point_orders"]) << "\n";
            for (const auto& d : iso["divisors"])
                os << "    " << std::left << std::setw(24) << str(d["divisor"]) << ord(d["orders"])
                   << (d["through_point"].get<bool>() ? "  through point" : "") << "\n";
            if (!p.contains("depth")) continue;
            os << "  depth " << p["depth"].dump() << ", ledger "
               << (p["ledger"]["crepant"].get<bool>() ? "crepant" : "NOT crepant") << " (nets";
            for (const auto& e : p["ledger"]["entries"]) os << " " << e["net"].dump();
            os << ")\n";
            for (const auto& s : p["surfaces"]) {
                os << "  surface " << str(s["label"]) << ": f|E = " << str(s["f_restricted"])
                   << ", g|E = " << str(s["g_restricted"]) << "\n";
                for (const auto& pl : s["places"])
                    os << "    " << std::setw(28) << str(pl["location"]) << std::setw(12) << str(pl["fiber"]["type"])
                       << "x " << pl["points"].dump() << "\n";
                os << "    " << str(s["verdict"]) << "\n";
            }
            if (p.contains("mordell_weil")) {
                const json& mw = p["mordell_weil"];
                os << "  Mordell-Weil rank " << mw["rank"].dump() << ", torsion " << str(mw["torsion_structure"])
                   << " (order " << str(mw["torsion_order"]) << "), sections " << str(mw["section_count"]) << "\n";
                os << "  flopping census " << str(mw["census"]["total"]) << " = " << str(mw["census"]["sections"])
                   << " + " << mw["census"]["fiber_components"].dump() << "; " << str(mw["dichotomy"]) << "\n";
                const json& b = p["bounds"];
                os << "  bounds (n=" << b["n_surfaces"].dump() << "): lower " << str(b["lower_any"]) << ", "
                   << str(b["lower_generic"]) << ", " << str(b["lower_product"]) << "; upper "
                   << str(b["upper_extremal"]) << "\n";
            }
        }
    }
    if (!r["warnings"].empty()) {
        os << "\nwarnings:\n";
        for (const auto& w : r["warnings"]) os << "  - " << str(w) << "\n";
    }
    return os.str();
}

}  // namespace ellflop
