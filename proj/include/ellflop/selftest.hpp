#pragma once

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mordell_weil.hpp"
#include "polynomial_gcd.hpp"
#include "polynomial_io.hpp"
#include "resolve.hpp"

namespace ellflop {

struct CheckResult {
    std::string name;
    bool passed = true;
    unsigned instances = 0;
    std::string detail;  // first failure
    double seconds = 0;
};

struct SelftestOptions {
    std::uint64_t seed = 20240611;
    unsigned instances = 200;
    bool corrupt_kodaira_table = false;  // fault injection: drop the IV row
};

namespace selftest_detail {

using Rng = std::mt19937_64;
const std::vector<std::string> kST{"s", "t"};

inline long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational small_rational(Rng& rng) {
    long n = pick(rng, -5, 5);
    return pick(rng, 0, 3) == 0 ? Rational(n, pick(rng, 1, 4)) : Rational(n);
}

inline RatPoly random_poly(Rng& rng, unsigned max_deg = 3, unsigned max_terms = 4) {
    RatPoly p(kST);
    unsigned terms = static_cast<unsigned>(pick(rng, 0, max_terms));
    for (unsigned i = 0; i < terms; ++i) {
        Monomial m{static_cast<unsigned>(pick(rng, 0, max_deg)), static_cast<unsigned>(pick(rng, 0, max_deg))};
        p.add_term(m, small_rational(rng));
    }
    return p;
}

inline RatPoly nonzero_poly(Rng& rng, unsigned max_deg = 3) {
    for (;;) {
        RatPoly p = random_poly(rng, max_deg);
        if (!p.is_zero()) return p;
    }
}

/// Random form with every monomial of total degree in [lo, hi].
inline RatPoly random_local(Rng& rng, unsigned lo, unsigned hi, unsigned terms) {
    RatPoly p(kST);
    for (unsigned i = 0; i < terms; ++i) {
        unsigned d = static_cast<unsigned>(pick(rng, lo, hi));
        unsigned a = static_cast<unsigned>(pick(rng, 0, d));
        p.add_term(Monomial{a, d - a}, Rational(pick(rng, -4, 4)));
    }
    return p;
}

inline RatPoly linear_form(Rng& rng) {
    for (;;) {
        long a = pick(rng, -3, 3), b = pick(rng, -3, 3);
        if (a == 0 && b == 0) continue;
        return Rational(a) * RatPoly::variable(kST, "s") + Rational(b) * RatPoly::variable(kST, "t") +
               RatPoly::constant(kST, pick(rng, -3, 3));
    }
}

struct Runner {
    CheckResult res;
    template <class F>
    Runner(std::string name, unsigned n, F&& body) {
        auto t0 = std::chrono::steady_clock::now();
        res.name = std::move(name);
        try {
            for (unsigned i = 0; i < n && res.passed; ++i) {
                std::string why = body(i);
                ++res.instances;
                if (!why.empty()) {
                    res.passed = false;
                    res.detail = "instance " + std::to_string(i) + ": " + why;
                }
            }
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

inline std::string fail(const std::string& what, const RatPoly& a, const RatPoly& b) {
    return what + ": " + format(a) + " vs " + format(b);
}

}  // namespace selftest_detail

/// Property suites over seeded random instances.
inline std::vector<CheckResult> run_properties(const SelftestOptions& opt) {
    using namespace selftest_detail;
    std::vector<CheckResult> out;
    const unsigned n = opt.instances;
    Rng rng(opt.seed);

    out.push_back(Runner("ring_axioms", n, [&](unsigned) -> std::string {
                      RatPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
                      if ((a + b) + c != a + (b + c)) return fail("additive associativity", a, b);
                      if (a + b != b + a) return fail("additive commutativity", a, b);
                      if ((a * b) * c != a * (b * c)) return fail("multiplicative associativity", a, b);
                      if (a * b != b * a) return fail("multiplicative commutativity", a, b);
                      if (a * (b + c) != a * b + a * c) return fail("distributivity", a, b);
                      if (!(a - a).is_zero()) return fail("additive inverse", a, a);
                      if (a * a.constant_like(1) != a) return fail("unit", a, a);
                      return "";
                  }).res);

    out.push_back(Runner("ord_additivity_point", n, [&](unsigned) -> std::string {
                      Point p{{"s", small_rational(rng)}, {"t", small_rational(rng)}};
                      RatPoly ls = parse("s", kST) - RatPoly::constant(kST, p.at("s"));
                      RatPoly lt = parse("t", kST) - RatPoly::constant(kST, p.at("t"));
                      RatPoly a = nonzero_poly(rng) * pow(ls, static_cast<unsigned>(pick(rng, 0, 3))) *
                                  pow(lt, static_cast<unsigned>(pick(rng, 0, 2)));
                      RatPoly b = nonzero_poly(rng) * pow(lt, static_cast<unsigned>(pick(rng, 0, 3)));
                      if (ord_at_point(a * b, p) != ord_at_point(a, p) + ord_at_point(b, p))
                          return fail("ord at point not additive", a, b);
                      return "";
                  }).res);

    out.push_back(Runner("ord_additivity_divisor", n, [&](unsigned) -> std::string {
                      RatPoly d = linear_form(rng);
                      RatPoly a = nonzero_poly(rng, 2) * pow(d, static_cast<unsigned>(pick(rng, 0, 3)));
                      RatPoly b = nonzero_poly(rng, 2) * pow(d, static_cast<unsigned>(pick(rng, 0, 3)));
                      if (ord_along(a * b, d) != ord_along(a, d) + ord_along(b, d))
                          return fail("ord along " + format(d) + " not additive", a, b);
                      return "";
                  }).res);

    out.push_back(Runner("twist_equivariance", n, [&](unsigned) -> std::string {
                      RatPoly d = linear_form(rng);
                      unsigned k = static_cast<unsigned>(pick(rng, 0, 2));
                      for (;;) {
                          RatPoly f = pow(d, 4 * k + static_cast<unsigned>(pick(rng, 0, 2))) * random_poly(rng, 2);
                          RatPoly g = pow(d, 6 * k + static_cast<unsigned>(pick(rng, 0, 2))) * random_poly(rng, 2);
                          if (discriminant(f, g).is_zero()) continue;
                          WeierstrassChart m = make_model(f, g, kST);
                          Minimalization mm = minimalize_along(m, d, "D");
                          if (mm.k < k) return "twist multiplicity below construction";
                          if (mm.model.delta() * pow(d, 12 * mm.k) != m.delta())
                              return fail("Delta^ * d^12k != Delta", mm.model.delta(), m.delta());
                          if (mm.model.f() * pow(d, 4 * mm.k) != f) return fail("f^ * d^4k != f", mm.model.f(), f);
                          if (mm.model.g() * pow(d, 6 * mm.k) != g) return fail("g^ * d^6k != g", mm.model.g(), g);
                          return "";
                      }
                  }).res);

    out.push_back(Runner("parse_print_roundtrip", n, [&](unsigned) -> std::string {
                      RatPoly a = random_poly(rng, 4, 6);
                      RatPoly back = parse(format(a), kST);
                      if (back != a) return fail("round trip", a, back);
                      return "";
                  }).res);

    out.push_back(Runner("squarefree_recomposition", n, [&](unsigned) -> std::string {
                      RatPoly p = RatPoly::constant(kST, Rational(pick(rng, 1, 6)) * Rational(pick(rng, 0, 1) ? 1 : -1));
                      unsigned nf = static_cast<unsigned>(pick(rng, 1, 3));
                      for (unsigned i = 0; i < nf; ++i)
                          p *= pow(linear_form(rng), static_cast<unsigned>(pick(rng, 1, 3)));
                      if (pick(rng, 0, 1)) p *= parse("s^2 + t^2 + 1", kST);
                      SquarefreeDecomposition sd = squarefree_decompose(p);
                      RatPoly r = RatPoly::constant(kST, sd.unit);
                      for (const auto& f : sd.factors) {
                          r *= pow(f.factor, f.multiplicity);
                          auto inner = squarefree_decompose(f.factor).factors;
                          if (inner.size() != 1 || inner[0].multiplicity != 1)
                              return "factor " + format(f.factor) + " is not square-free";
                      }
                      if (r != p) return fail("recomposition", r, p);
                      return "";
                  }).res);

    out.push_back(Runner("chart_overlap", n, [&](unsigned) -> std::string {
                      for (;;) {
                          RatPoly f = random_local(rng, 3, 6, 4);
                          RatPoly g = random_local(rng, 5, 8, 4);
                          if (discriminant(f, g).is_zero()) continue;
                          Point c{{"s", small_rational(rng)}, {"t", small_rational(rng)}};
                          Point shift{{"s", -c.at("s")}, {"t", -c.at("t")}};
                          WeierstrassChart m = make_model(translate(f, shift), translate(g, shift), kST);
                          BlowupStep step = blow_up(m, c);
                          if (!charts_agree_on_overlap(step)) return "charts disagree for f = " + format(m.f());
                          return "";
                      }
                  }).res);

    std::vector<KodairaRow> table(kKodairaTable.begin(), kKodairaTable.end());
    if (opt.corrupt_kodaira_table) table.erase(table.begin() + 4);
    out.push_back(Runner("kodaira_totality", n, [&](unsigned i) -> std::string {
                      if (i == 0) {
                          TotalityReport rep = check_totality(table);
                          if (!rep.ok) return rep.message;
                      }
                      OrderTriple t{static_cast<unsigned>(pick(rng, 0, 8)), static_cast<unsigned>(pick(rng, 0, 8)),
                                    static_cast<unsigned>(pick(rng, 0, 24))};
                      if (!t.consistent()) {
                          try {
                              classify_with(t, table);
                          } catch (const MalformedTriple&) {
                              return "";
                          }
                          return "inconsistent triple " + t.str() + " was classified";
                      }
                      KodairaFiber k = classify_with(t, table);
                      if (k.euler != t.d.value()) return "Euler number differs from d at " + t.str();
                      return "";
                  }).res);

    out.push_back(Runner("extremal_rank_zero", n, [&](unsigned i) -> std::string {
                      const auto& entries = default_extremal_table();
                      const ExtremalEntry& e = entries[i % entries.size()];
                      std::vector<std::string> labels = e.config;
                      std::shuffle(labels.begin(), labels.end(), rng);
                      FiberConfiguration c = configuration_from_labels(labels);
                      if (shioda_tate_rank(c) != 0) return "positive rank for an extremal entry";
                      TorsionResult tr = torsion_lookup(c);
                      if (!tr.order || *tr.order != e.torsion_order) return "torsion lookup unstable under permutation";
                      return "";
                  }).res);

    out.push_back(Runner("ledger_crepancy", n, [&](unsigned) -> std::string {
                      for (;;) {
                          RatPoly f = random_local(rng, 4, 6, 4);
                          RatPoly g = random_local(rng, 6, 8, 4);
                          if (discriminant(f, g).is_zero()) continue;
                          Point c{{"s", small_rational(rng)}, {"t", small_rational(rng)}};
                          Point shift{{"s", -c.at("s")}, {"t", -c.at("t")}};
                          WeierstrassChart m = make_model(translate(f, shift), translate(g, shift), kST);
                          IsolationResult iso = is_isolated_46_12(m, c, {});
                          if (!iso.isolated || !iso.point_in_46_12_class) continue;
                          try {
                              ResolutionTree tree = resolve_isolated(m, c, {}, 4);
                              if (tree.depth() == 0) return "empty resolution";
                              if (!tree.ledger.crepant())
                                  return "ledger not crepant for f = " + format(m.f()) + ", g = " + format(m.g());
                              for (const auto& st : tree.steps) {
                                  const RatPoly& e = st.chart_u.exceptional_divisors().front().divisor;
                                  if (meets_46_threshold(orders_along(st.chart_u, e)))
                                      return "chart still reaches (4,6) along " + st.label;
                              }
                              if (tree.status == ResolutionStatus::Resolved && tree.final_surface().has_46_12_point)
                                  return "resolved tree ends on a (4,6,12) point";
                              return "";
                          } catch (const RestrictedDeltaZero&) {
                              continue;
                          } catch (const NotIsolated&) {
                              continue;
                          }
                      }
                  }).res);
    return out;
}

namespace selftest_detail {

inline std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

}  // namespace selftest_detail

/// Worked examples pinned as regressions.
inline std::vector<CheckResult> run_regressions() {
    using namespace selftest_detail;
    std::vector<CheckResult> out;
    const Point origin{{"s", 0}, {"t", 0}};
    auto P = [](const std::string& t) { return parse(t, kST); };

    out.push_back(Runner("minimalize_s4_s6", 1, [&](unsigned) -> std::string {
                      Minimalization mm = minimalize_along(make_model(P("s^4"), P("s^6"), kST), P("s"), "D");
                      return expect(mm.k == 1 && mm.model.f() == P("1") && mm.model.g() == P("1"),
                                    "expected (1, 1) with k = 1");
                  }).res);

    out.push_back(Runner("tangent_branches_depth_two", 1, [&](unsigned) -> std::string {
                      WeierstrassChart m =
                          make_model(P("(s - t^2)^2*(s + t^2)^2"), P("(s - t^2)^3*(s + t^2)^3"), kST);
                      std::vector<RatPoly> c{P("s - t^2"), P("s + t^2")};
                      ResolutionTree tree = resolve_isolated(m, origin, c);
                      std::vector<std::string> ut{"u", "t"};
                      if (tree.depth() != 2) return "depth " + std::to_string(tree.depth());
                      if (tree.steps[0].chart_u.f() != parse("(u - t)^2*(u + t)^2", ut)) return "round-1 chart f";
                      if (tree.steps[0].chart_u.g() != parse("(u - t)^3*(u + t)^3", ut)) return "round-1 chart g";
                      if (tree.surfaces[0].rational || !tree.surfaces[0].has_46_12_point) return "round-1 surface";
                      if (!tree.surfaces[1].rational) return "round-2 surface not rational";
                      if (tree.surfaces[1].config.labels() != std::vector<std::string>{"I0*", "I0*"})
                          return "round-2 configuration";
                      return expect(tree.ledger.crepant(), "ledger not crepant");
                  }).res);

    out.push_back(Runner("two_i0star_extremal", 1, [&](unsigned) -> std::string {
                      WeierstrassChart m = make_model(P("s^2*t^2"), P("s^3*t^3"), kST);
                      std::vector<RatPoly> c{P("s"), P("t")};
                      ResolutionTree tree = resolve_isolated(m, origin, c);
                      if (tree.depth() != 1) return "depth";
                      MWReport mw = mordell_weil(tree.final_surface().config);
                      if (mw.rank != 0 || mw.section_count != Count::finite(4)) return "rank/torsion";
                      if (mw.census.total != Count::finite(14)) return "census";
                      ModelCountBounds b = model_count_bounds(9, mw.census);
                      return expect(b.lower_product == BigInt(387420489) && b.upper_extremal &&
                                        *b.upper_extremal == BigInt(9225216),
                                    "bounds");
                  }).res);

    out.push_back(Runner("transverse_twelve_i1", 1, [&](unsigned) -> std::string {
                      WeierstrassChart m = make_model(P("s^4"), P("t^6"), kST);
                      ResolutionTree tree = resolve_isolated(m, origin, {});
                      if (tree.depth() != 1) return "depth";
                      const auto& cfg = tree.final_surface().config;
                      if (cfg.labels() != std::vector<std::string>(12, "I1")) return "configuration";
                      MWReport mw = mordell_weil(cfg);
                      return expect(mw.rank == 8 && mw.dichotomy == Dichotomy::InfiniteFlopCandidates, "rank 8");
                  }).res);
    return out;
}

inline std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
    std::vector<CheckResult> all = run_regressions();
    for (auto& r : run_properties(opt)) all.push_back(std::move(r));
    return all;
}

/// Prints one line per check; returns 0 when everything passed and names the first failure otherwise.
inline int cmd_selftest(const SelftestOptions& opt, std::ostream& out, std::ostream& err) {
    int failed = 0;
    for (const auto& r : run_selftest(opt)) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.instances << " instances)";
        if (!r.passed) out << ": " << r.detail;
        out << "\n";
        if (!r.passed && failed++ == 0) err << "first failing check: " << r.name << "\n";
    }
    return failed == 0 ? 0 : 1;
}

}  // namespace ellflop
