#include <gtest/gtest.h>

#include <ellflop/resolve.hpp>

using namespace ellflop;

namespace {

const std::vector<std::string> ST{"s", "t"};
RatPoly P(const std::string& text, const std::vector<std::string>& vars = ST) { return parse(text, vars); }
WeierstrassChart model(const std::string& f, const std::string& g) { return make_model(P(f), P(g), ST); }
const Point kOrigin{{"s", 0}, {"t", 0}};

WeierstrassChart example33() { return model("(s - t^2)^2*(s + t^2)^2", "(s - t^2)^3*(s + t^2)^3"); }
WeierstrassChart final_example() { return model("s^2*t^2", "s^3*t^3"); }
WeierstrassChart example213() { return model("s^4", "t^6"); }

}  // namespace

TEST(BlowUp, Example33FirstRound) {
    BlowupStep step = blow_up(example33(), kOrigin);
    std::vector<std::string> ut{"u", "t"};
    EXPECT_EQ(step.label, "E1");
    EXPECT_EQ(step.chart_u.variables(), ut);
    EXPECT_EQ(step.pulled_orders_u, (OrderTriple{4, 6, 12}));
    EXPECT_EQ(step.twist_k, 1u);
    EXPECT_EQ(step.chart_u.f(), P("(u - t)^2*(u + t)^2", ut));
    EXPECT_EQ(step.chart_u.g(), P("(u - t)^3*(u + t)^3", ut));
    EXPECT_TRUE(charts_agree_on_overlap(step));
}

TEST(BlowUp, FinalExampleCharts) {
    BlowupStep step = blow_up(final_example(), kOrigin);
    std::vector<std::string> ut{"u", "t"};
    std::vector<std::string> sv{"s", "v"};
    EXPECT_EQ(step.twist_k, 1u);
    EXPECT_EQ(step.chart_u.f(), P("u^2", ut));
    EXPECT_EQ(step.chart_u.g(), P("u^3", ut));
    EXPECT_EQ(step.chart_v.f(), P("v^2", sv));
    EXPECT_EQ(step.chart_v.g(), P("v^3", sv));
    EXPECT_TRUE(charts_agree_on_overlap(step));
}

TEST(BlowUp, OffOriginCenterIsTranslated) {
    // Same model shifted by (s, t) -> (s - 2, t + 1/3).
    auto shifted = model("(s - 2)^2*(t + 1/3)^2", "(s - 2)^3*(t + 1/3)^3");
    BlowupStep step = blow_up(shifted, {{"s", 2}, {"t", Rational(-1) / Rational(3)}});
    std::vector<std::string> ut{"u", "t"};
    EXPECT_EQ(step.chart_u.f(), P("u^2", ut));
    EXPECT_TRUE(charts_agree_on_overlap(step));
}

TEST(BlowUp, FreshNamesAvoidClashes) {
    std::vector<std::string> uv{"u", "v"};
    auto m = make_model(parse("u^2*v^2", uv), parse("u^3*v^3", uv), uv);
    BlowupStep step = blow_up(m, {{"u", 0}, {"v", 0}});
    EXPECT_EQ(step.chart_u.variables(), (std::vector<std::string>{"w", "v"}));
    EXPECT_EQ(step.chart_v.variables(), (std::vector<std::string>{"u", "z"}));
    EXPECT_TRUE(charts_agree_on_overlap(step));
}

TEST(Surface, FinalExampleTwoI0Star) {
    SurfaceReport r = extract_surface(blow_up(final_example(), kOrigin));
    EXPECT_EQ(r.config.labels(), (std::vector<std::string>{"I0*", "I0*"}));
    EXPECT_EQ(r.config.total_delta_degree, 12u);
    EXPECT_TRUE(r.rational);
    EXPECT_FALSE(r.has_46_12_point);
    EXPECT_TRUE(euler_check(r.config));
    ASSERT_EQ(r.config.places.size(), 2u);
    EXPECT_EQ(r.config.places[0].location(), "u=0");
    EXPECT_EQ(r.config.places[1].location(), "infinity");
    EXPECT_TRUE(r.isotrivial);
    EXPECT_TRUE(rationality_verdict(r).rational);
}

TEST(Surface, Example33FirstRoundNotRational) {
    SurfaceReport r = extract_surface(blow_up(example33(), kOrigin));
    std::vector<std::string> ut{"u", "t"};
    EXPECT_EQ(r.f_restricted, P("u^4", {"u"}));
    EXPECT_TRUE(r.has_46_12_point);
    EXPECT_FALSE(r.rational);
    ASSERT_TRUE(r.offending_point.has_value());
    EXPECT_EQ(r.offending_point->location(), "u=0");
    EXPECT_EQ(r.offending_point->fiber.triple, (OrderTriple{4, 6, 12}));
    auto v = rationality_verdict(r);
    EXPECT_FALSE(v.rational);
    EXPECT_NE(v.text.find("u=0"), std::string::npos);
}

TEST(Surface, Example213TransverseFibers) {
    SurfaceReport r = extract_surface(blow_up(example213(), kOrigin));
    EXPECT_EQ(r.delta_restricted, P("4*u^12 + 27", {"u"}));
    ASSERT_EQ(r.config.places.size(), 1u);
    const auto& place = r.config.places[0];
    EXPECT_EQ(place.kind, FiberPlace::Kind::Factor);
    EXPECT_EQ(place.points, 12u);
    EXPECT_EQ(place.fiber.label(), "I1");
    EXPECT_EQ(r.config.total_delta_degree, 12u);
    EXPECT_TRUE(r.rational);
    EXPECT_FALSE(r.isotrivial);
    EXPECT_EQ(r.zeros_of_f, Order(4));
    EXPECT_EQ(r.zeros_of_g, Order(6));
}

TEST(Surface, RestrictedDeltaZeroIsReported) {
    // j = 1728 cancellation on the exceptional curve: f|E = -3 u^2, g|E = 2 u^3.
    auto m = model("-3*s^2*t^2 + t^5", "2*s^3*t^3");
    EXPECT_THROW(extract_surface(blow_up(m, kOrigin)), RestrictedDeltaZero);
}

TEST(Surface, RefineBasisIsPairwiseCoprime) {
    std::vector<std::string> u{"u"};
    std::vector<RatPoly> basis;
    detail::refine_basis(basis, parse("u^2 - 1", u));
    detail::refine_basis(basis, parse("u^2 + u", u));
    detail::refine_basis(basis, parse("u - 1", u));
    EXPECT_EQ(basis.size(), 3u);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) EXPECT_TRUE(gcd(basis[i], basis[j]).is_constant());
}

TEST(Resolve, Example33DepthTwo) {
    std::vector<RatPoly> cands{P("s - t^2"), P("s + t^2")};
    ResolutionTree tree = resolve_isolated(example33(), kOrigin, cands);
    EXPECT_EQ(tree.status, ResolutionStatus::Resolved);
    ASSERT_EQ(tree.depth(), 2u);
    EXPECT_TRUE(tree.surfaces[0].has_46_12_point);
    EXPECT_FALSE(tree.surfaces[1].has_46_12_point);
    const SurfaceReport& last = tree.final_surface();
    EXPECT_EQ(last.config.labels(), (std::vector<std::string>{"I0*", "I0*"}));
    EXPECT_EQ(last.delta_restricted, P("31*(w - 1)^6*(w + 1)^6", {"w"}));
    EXPECT_TRUE(last.rational);
    ASSERT_EQ(tree.ledger.entries.size(), 2u);
    EXPECT_EQ(tree.ledger.entries[0].net, 0);
    EXPECT_EQ(tree.ledger.entries[1].net, 0);
    EXPECT_TRUE(tree.ledger.crepant());
    for (const auto& s : tree.steps) EXPECT_TRUE(charts_agree_on_overlap(s));
}

TEST(Resolve, FinalExampleDepthOne) {
    std::vector<RatPoly> cands{P("s"), P("t")};
    ResolutionTree tree = resolve_isolated(final_example(), kOrigin, cands);
    EXPECT_EQ(tree.status, ResolutionStatus::Resolved);
    EXPECT_EQ(tree.depth(), 1u);
    EXPECT_TRUE(tree.ledger.crepant());
    EXPECT_EQ(tree.ledger.total(), 0);
}

TEST(Resolve, Example213DepthOne) {
    ResolutionTree tree = resolve_isolated(example213(), kOrigin, {});
    EXPECT_EQ(tree.status, ResolutionStatus::Resolved);
    EXPECT_EQ(tree.depth(), 1u);
    EXPECT_EQ(tree.final_surface().delta_restricted, P("4*u^12 + 27", {"u"}));
}

TEST(Resolve, RecursionLimitStopsEarly) {
    std::vector<RatPoly> cands{P("s - t^2"), P("s + t^2")};
    ResolutionTree tree = resolve_isolated(example33(), kOrigin, cands, 1);
    EXPECT_EQ(tree.status, ResolutionStatus::RecursionLimit);
    EXPECT_EQ(tree.depth(), 1u);
    EXPECT_THROW(resolve_isolated(example33(), kOrigin, cands, 0), DegenerateArgument);
}

TEST(Resolve, RejectsNonIsolatedPoints) {
    std::vector<RatPoly> cands{P("s")};
    EXPECT_THROW(resolve_isolated(model("s^4", "s^6"), kOrigin, cands), NotIsolated);
    EXPECT_THROW(resolve_isolated(final_example(), {{"s", 1}, {"t", 0}}, {}), NotIsolated);
}

TEST(Resolve, NonRationalCenter) {
    // Twist k = 2 leaves f|E = (u^2 + 1)^4, g|E = (u^2 + 1)^6: a conjugate pair of (4,6,12) points.
    auto m = model("(s^2 + t^2)^4 + s^9", "(s^2 + t^2)^6 + t^13");
    ResolutionTree tree = resolve_isolated(m, kOrigin, {});
    EXPECT_EQ(tree.status, ResolutionStatus::NonRationalCenter);
    ASSERT_TRUE(tree.final_surface().offending_point.has_value());
    EXPECT_EQ(tree.final_surface().offending_point->kind, FiberPlace::Kind::Factor);
}

TEST(Ledger, BaseDivisorTwist) {
    LedgerEntry e = base_divisor_twist("D", 1);
    EXPECT_EQ(e.base_discrepancy, 0);
    EXPECT_EQ(e.net, -1);
    DiscrepancyLedger l;
    l.record("E1", 1, 1);
    l.entries.push_back(e);
    EXPECT_FALSE(l.crepant());
    EXPECT_EQ(l.total(), -1);
}

TEST(Surface, ChartsAgreeAtSharedPoints) {
    // Places at u = c != 0 seen from chart V at v = 1/c.
    std::vector<WeierstrassChart> models{
        model("s^2*t^2", "s^3*t^3"),
        model("(s - t)^2*(s + 2*t)^2 + t^5", "(s - t)^3*(s + 2*t)^3"),
        model("(s - 3*t)*s^3", "(s - 3*t)^2*t^4 + s^7"),
    };
    unsigned shared = 0;
    for (const auto& m : models) {
        BlowupStep step = blow_up(m, kOrigin);
        SurfaceReport r = extract_surface(step);
        for (const auto& p : r.config.places) {
            if (p.kind != FiberPlace::Kind::Rational || p.point.is_zero()) continue;
            Point at{{step.v_coordinate(), Rational(1) / p.point}};
            OrderTriple t{ord_at_point(r.f_at_infinity, at), ord_at_point(r.g_at_infinity, at),
                          ord_at_point(discriminant(r.f_at_infinity, r.g_at_infinity), at)};
            EXPECT_EQ(classify(t).label(), p.fiber.label()) << p.location();
            ++shared;
        }
    }
    EXPECT_GE(shared, 3u);
}

TEST(Surface, ResolvedSurfacesCoverDegreeTwelve) {
    std::vector<RatPoly> c33{P("s - t^2"), P("s + t^2")};
    for (const auto& tree : {resolve_isolated(example33(), kOrigin, c33), resolve_isolated(final_example(), kOrigin, {}),
                             resolve_isolated(example213(), kOrigin, {})}) {
        const SurfaceReport& s = tree.final_surface();
        unsigned sum = 0;
        for (const auto& p : s.config.places) {
            sum += p.fiber.triple.d.value() * p.points;
            EXPECT_TRUE(p.fiber.is_kodaira());
            EXPECT_NE(p.fiber.type, FiberType::I0);
        }
        EXPECT_EQ(sum, 12u);
        EXPECT_EQ(s.config.total_delta_degree, 12u);
    }
}

TEST(BlowUp, ExceptionalOrdersBelowThreshold) {
    for (const auto& m : {example33(), final_example(), example213()}) {
        BlowupStep step = blow_up(m, kOrigin);
        EXPECT_FALSE(meets_46_threshold(orders_along(step.chart_u, step.chart_u.exceptional_divisors()[0].divisor)));
        EXPECT_FALSE(meets_46_threshold(orders_along(step.chart_v, step.chart_v.exceptional_divisors()[0].divisor)));
        EXPECT_EQ(step.chart_u.delta(), discriminant(step.chart_u.f(), step.chart_u.g()));
        EXPECT_EQ(step.chart_v.delta(), discriminant(step.chart_v.f(), step.chart_v.g()));
    }
}

TEST(Resolve, Deterministic) {
    std::vector<RatPoly> c33{P("s - t^2"), P("s + t^2")};
    ResolutionTree a = resolve_isolated(example33(), kOrigin, c33);
    ResolutionTree b = resolve_isolated(example33(), kOrigin, c33);
    ASSERT_EQ(a.depth(), b.depth());
    for (std::size_t i = 0; i < a.depth(); ++i) {
        EXPECT_EQ(a.steps[i].chart_u.f(), b.steps[i].chart_u.f());
        EXPECT_EQ(a.steps[i].chart_v.g(), b.steps[i].chart_v.g());
        EXPECT_EQ(a.surfaces[i].config.labels(), b.surfaces[i].config.labels());
    }
}

TEST(Ledger, HypotheticalDoubleTwistOnBase) {
    DiscrepancyLedger l;
    l.entries.push_back(base_divisor_twist("D", 2));
    EXPECT_EQ(l.entries[0].net, -2);
    EXPECT_FALSE(l.crepant());
    ResolutionTree tree = resolve_isolated(final_example(), kOrigin, {});
    EXPECT_EQ(ledger_of(tree).entries.size(), 1u);
    EXPECT_EQ(ledger_of(tree).entries[0].base_discrepancy - ledger_of(tree).entries[0].twist_k,
              ledger_of(tree).entries[0].net);
}
