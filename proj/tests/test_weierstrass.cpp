#include <gtest/gtest.h>

#include <ellflop/weierstrass.hpp>

using namespace ellflop;

namespace {

const std::vector<std::string> ST{"s", "t"};
RatPoly P(const std::string& text, const std::vector<std::string>& vars = ST) { return parse(text, vars); }
WeierstrassChart model(const std::string& f, const std::string& g) { return make_model(P(f), P(g), ST); }
const Point kOrigin{{"s", 0}, {"t", 0}};

}  // namespace

TEST(MakeModel, DiscriminantAndErrors) {
    // 4 + 27 = 31
    EXPECT_EQ(model("s^4", "s^6").delta(), P("31*s^12"));
    EXPECT_EQ(model("s^2*t^2", "s^3*t^3").delta(), P("31*s^6*t^6"));
    EXPECT_THROW(model("0", "0"), ZeroDiscriminant);
    // j = 1728 style cancellation: f = -3, g = 2 gives 4*(-27) + 27*4 = 0.
    EXPECT_THROW(model("-3", "2"), ZeroDiscriminant);
    EXPECT_THROW(make_model(P("s"), P("u", {"u", "t"}), ST), UniverseMismatch);
}

TEST(OrdersAt, Examples) {
    EXPECT_EQ(orders_at(model("s^2*t^2", "s^3*t^3"), kOrigin), (OrderTriple{4, 6, 12}));
    EXPECT_EQ(orders_at(model("s^2*t^2", "s^3*t^3"), {{"s", 1}, {"t", 2}}), (OrderTriple{0, 0, 0}));
    auto ex = model("(s - t^2)^2*(s + t^2)^2", "(s - t^2)^3*(s + t^2)^3");
    EXPECT_EQ(orders_at(ex, kOrigin), (OrderTriple{4, 6, 12}));
}

TEST(OrdersAlong, Examples) {
    auto ex = model("(s - t^2)^2*(s + t^2)^2", "(s - t^2)^3*(s + t^2)^3");
    EXPECT_EQ(orders_along(ex, P("s - t^2")), (OrderTriple{2, 3, 6}));
    EXPECT_EQ(orders_along(ex, P("s + t + 1")), (OrderTriple{0, 0, 0}));
    std::vector<std::string> ut{"u", "t"};
    auto pulled = make_model(parse("t^4*(u - t)^2*(u + t)^2", ut), parse("t^6*(u - t)^3*(u + t)^3", ut), ut);
    EXPECT_EQ(orders_along(pulled, parse("t", ut)), (OrderTriple{4, 6, 12}));
    EXPECT_THROW(orders_along(ex, P("2")), DegenerateArgument);
}

TEST(Minimalize, UnitCoefficientStrictTransform) {
    auto m = minimalize_along(model("s^4", "s^6"), P("s"), "D");
    EXPECT_EQ(m.k, 1u);
    EXPECT_EQ(m.model.f(), P("1"));
    EXPECT_EQ(m.model.g(), P("1"));
    ASSERT_EQ(m.model.twist_log().size(), 1u);
    EXPECT_EQ(m.model.twist_log()[0], (TwistRecord{"D", 1}));
}

TEST(Minimalize, SubstitutionOracle) {
    // f = s^4, g = t^6 pulled back by s = u*t gives (u^4 t^4, t^6); dividing by (t^4, t^6) leaves (u^4, 1).
    std::vector<std::string> ut{"u", "t"};
    RatPoly ut_s = parse("u*t", ut);
    RatPoly f = substitute(P("s^4"), "s", ut_s);
    RatPoly g = substitute(P("t^6"), "s", ut_s);
    EXPECT_EQ(f, parse("u^4*t^4", ut));
    auto m = minimalize_along(make_model(f, g, ut), parse("t", ut), "E1");
    EXPECT_EQ(m.k, 1u);
    EXPECT_EQ(m.model.f(), parse("u^4", ut));
    EXPECT_EQ(m.model.g(), parse("1", ut));
}

TEST(Minimalize, BelowThresholdUnchanged) {
    auto base = model("(s - t)^2", "(s - t)^3 + t^7");
    auto m = minimalize_along(base, P("s - t"), "D");
    EXPECT_EQ(m.k, 0u);
    EXPECT_EQ(m.model.f(), base.f());
    EXPECT_TRUE(m.model.twist_log().empty());
}

TEST(Minimalize, DoubleTwistAndEquivariance) {
    auto base = model("s^9*(t + 1)", "s^13");
    auto m = minimalize_along(base, P("s"), "D");
    EXPECT_EQ(m.k, 2u);
    EXPECT_EQ(m.model.delta() * pow(P("s"), 24), base.delta());
    EXPECT_EQ(orders_along(m.model, P("s")).d.value() + 24, orders_along(base, P("s")).d.value());
}

TEST(IsMinimal, Examples) {
    auto r = is_minimal(model("s^4", "s^6"), {});
    EXPECT_FALSE(r.minimal);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(*r.witness, P("s"));

    EXPECT_TRUE(is_minimal(model("1", "1"), {}).minimal);

    std::vector<RatPoly> cands{P("s"), P("t")};
    EXPECT_TRUE(is_minimal(model("s^2*t^2", "s^3*t^3"), cands).minimal);
}

TEST(IsMinimal, MonotoneInCandidates) {
    // s*t = 0 is not prime; only the user-supplied candidate exposes the (4,6) divisor t.
    auto m = model("s^2*t^4", "s^3*t^7 + t^6*s^4");
    std::vector<RatPoly> none;
    std::vector<RatPoly> more{P("s + 1"), P("t")};
    bool before = is_minimal(m, none).minimal;
    bool after = is_minimal(m, more).minimal;
    EXPECT_FALSE(after);
    EXPECT_TRUE(before || !after);
}

TEST(Isolation, FinalExample) {
    std::vector<RatPoly> cands{P("s"), P("t")};
    auto r = is_isolated_46_12(model("s^2*t^2", "s^3*t^3"), kOrigin, cands);
    EXPECT_TRUE(r.isolated);
    EXPECT_TRUE(r.point_in_46_12_class);
    ASSERT_GE(r.divisors.size(), 2u);
    EXPECT_EQ(r.divisors[0].orders, (OrderTriple{2, 3, 6}));
    EXPECT_EQ(r.divisors[1].orders, (OrderTriple{2, 3, 6}));
    EXPECT_TRUE(r.divisors[0].through_point);
}

TEST(Isolation, DivisorCarriesTheOrders) {
    std::vector<RatPoly> cands{P("s")};
    auto r = is_isolated_46_12(model("s^4", "s^6"), kOrigin, cands);
    EXPECT_FALSE(r.isolated);
    EXPECT_TRUE(r.divisors[0].meets_threshold);
}

TEST(Isolation, Example33) {
    std::vector<RatPoly> cands{P("s - t^2"), P("s + t^2")};
    auto r = is_isolated_46_12(model("(s - t^2)^2*(s + t^2)^2", "(s - t^2)^3*(s + t^2)^3"), kOrigin, cands);
    EXPECT_TRUE(r.isolated);
}

TEST(Isolation, PointBelowThreshold) {
    auto r = is_isolated_46_12(model("s^2*t^2", "s^3*t^3"), {{"s", 0}, {"t", 1}}, {});
    EXPECT_FALSE(r.isolated);
    EXPECT_EQ(r.point_orders, (OrderTriple{2, 3, 6}));
}

TEST(CanonicalBound, Examples) {
    std::vector<OrderTriple> ok{{4, 6, 12}};
    EXPECT_TRUE(canonical_bound_check(ok).met);
    std::vector<OrderTriple> bad{{8, 12, 24}};
    auto v = canonical_bound_check(bad);
    EXPECT_FALSE(v.met);
    EXPECT_EQ(*v.offending, (OrderTriple{8, 12, 24}));
    std::vector<OrderTriple> mixed{{0, 0, 1}, {4, 6, 12}};
    EXPECT_TRUE(canonical_bound_check(mixed).met);
}
