#include <gtest/gtest.h>

#include <ellflop/report.hpp>
#include <ellflop/selftest.hpp>

#include <sstream>

using namespace ellflop;

namespace {

JobSpec job(const std::string& file) { return load_job(std::string(ELLFLOP_JOBS_DIR) + "/" + file); }

}  // namespace

TEST(JobSpec, ParsesAllFields) {
    JobSpec s = parse_job(R"({"variables": ["s", "t"], "f": "s^2*t^2", "g": "s^3*t^3",
                              "points": [[0, "1/2"]], "divisors": ["s"], "n_surfaces": 9, "recursion_limit": 3})");
    EXPECT_EQ(s.variables, (std::vector<std::string>{"s", "t"}));
    ASSERT_EQ(s.points.size(), 1u);
    EXPECT_EQ(s.points[0].at("t"), Rational(1) / Rational(2));
    EXPECT_EQ(s.divisors.size(), 1u);
    EXPECT_EQ(*s.n_surfaces, 9u);
    EXPECT_EQ(s.recursion_limit, 3u);
}

TEST(JobSpec, InputErrorsNameTheField) {
    auto message = [](const std::string& text) {
        try {
            parse_job(text, "job.json");
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("{").find("job.json"), std::string::npos);
    EXPECT_NE(message(R"({"variables": ["s"], "f": "1", "g": "1"})").find("variables"), std::string::npos);
    EXPECT_NE(message(R"({"variables": ["s","t"], "f": "s t", "g": "1"})").find("field 'f'"), std::string::npos);
    EXPECT_NE(message(R"({"variables": ["s","t"], "f": "x", "g": "1"})").find("undeclared"), std::string::npos);
    EXPECT_NE(message(R"({"variables": ["s","t"], "f": "1", "g": "1", "points": [[0.5, 1]]})").find("points[0]"),
              std::string::npos);
    EXPECT_NE(message(R"({"variables": ["s","t"], "f": "1", "g": "1", "n_surfaces": 0})").find("n_surfaces"),
              std::string::npos);
    EXPECT_NE(message(R"({"variables": ["s","t"], "f": "1", "g": "1", "extra": 1})").find("extra"),
              std::string::npos);
}

TEST(Classify, Example33) {
    Report r = cmd_classify(job("example33.json"));
    const json& p = r.data["points"][0];
    EXPECT_EQ(p["fiber"]["type"], "NonKodaira");
    EXPECT_EQ(p["fiber"]["orders"], json({{"a", 4}, {"b", 6}, {"d", 12}}));
    EXPECT_EQ(r.data["divisors"][0]["divisor"], "s - t^2");
    EXPECT_EQ(r.data["divisors"][0]["fiber"]["type"], "I0*");
    EXPECT_TRUE(r.data["minimality"]["minimal"].get<bool>());
}

TEST(Classify, FinalExampleDivisors) {
    Report r = cmd_classify(job("final_example.json"));
    for (const auto& d : r.data["divisors"]) {
        EXPECT_EQ(d["fiber"]["type"], "I0*");
        EXPECT_EQ(d["fiber"]["orders"], json({{"a", 2}, {"b", 3}, {"d", 6}}));
    }
}

TEST(Classify, MinimalizationReported) {
    Report r = cmd_classify(job("minimalize.json"));
    const json& d = r.data["divisors"][0];
    EXPECT_EQ(d["minimalized"]["k"], 1);
    EXPECT_EQ(d["minimalized"]["f"], "1");
    EXPECT_EQ(d["minimalized"]["g"], "1");
    EXPECT_FALSE(r.data["minimality"]["minimal"].get<bool>());
    EXPECT_EQ(r.data["minimality"]["witness"], "s");
}

TEST(Classify, GenericPointsSortedAndSmooth) {
    Report r = cmd_classify(job("generic_point.json"));
    ASSERT_EQ(r.data["points"].size(), 2u);
    EXPECT_EQ(r.data["points"][0]["point"], json({"1/2", "-3"}));
    for (const auto& p : r.data["points"]) EXPECT_EQ(p["fiber"]["type"], "I0");
}

TEST(Classify, ZeroDiscriminant) { EXPECT_THROW(cmd_classify(job("zero_discriminant.json")), ZeroDiscriminant); }

TEST(Resolve, FinalExampleReport) {
    Report r = cmd_resolve(job("final_example.json"));
    EXPECT_EQ(r.exit_code, kExitOk);
    const json& p = r.data["points"][0];
    EXPECT_EQ(p["status"], "Resolved");
    EXPECT_EQ(p["depth"], 1);
    EXPECT_TRUE(p["ledger"]["crepant"].get<bool>());
    EXPECT_EQ(p["surfaces"][0]["configuration"], json({"I0*", "I0*"}));
    EXPECT_EQ(p["mordell_weil"]["rank"], 0);
    EXPECT_EQ(p["mordell_weil"]["torsion_order"], "4");
    EXPECT_EQ(p["mordell_weil"]["census"]["total"], "14");
    EXPECT_EQ(p["bounds"]["lower_product"], "387420489");
    EXPECT_EQ(p["bounds"]["upper_extremal"], "9225216");
    EXPECT_EQ(p["bounds"]["lower_any"], "2");
    EXPECT_FALSE(r.data["warnings"].empty());
}

TEST(Resolve, Example213Report) {
    Report r = cmd_resolve(job("example213.json"));
    const json& p = r.data["points"][0];
    EXPECT_EQ(p["mordell_weil"]["rank"], 8);
    EXPECT_EQ(p["mordell_weil"]["dichotomy"], "InfiniteFlopCandidates");
    EXPECT_EQ(p["bounds"]["upper_extremal"], "NotApplicable");
    EXPECT_EQ(p["surfaces"][0]["places"][0]["location"], "root_of(4*u^12 + 27)");
}

TEST(Resolve, ExitCodes) {
    JobSpec s = job("example33.json");
    s.recursion_limit = 1;
    EXPECT_EQ(cmd_resolve(s).exit_code, kExitLimit);
    Report r = cmd_resolve(job("generic_point.json"));
    EXPECT_EQ(r.exit_code, kExitPrecondition);
    EXPECT_EQ(r.data["points"][0]["status"], "NotIsolated");
}

TEST(Report, DeterministicAndRoundTrips) {
    for (const char* f : {"example33.json", "final_example.json", "example213.json"}) {
        std::string a = cmd_resolve(job(f)).data.dump(2);
        std::string b = cmd_resolve(job(f)).data.dump(2);
        EXPECT_EQ(a, b) << f;
        EXPECT_EQ(json::parse(a).dump(2), a) << f;
    }
}

TEST(Report, TextSummary) {
    std::string text = render_text(cmd_resolve(job("final_example.json")).data);
    EXPECT_NE(text.find("Mordell-Weil rank 0"), std::string::npos);
    EXPECT_NE(text.find("flopping census 14 = 4 + 10"), std::string::npos);
    EXPECT_NE(text.find("ellflop " ELLFLOP_VERSION), std::string::npos);
}

TEST(Resolve, CanonicalBoundReported) {
    Report r = cmd_resolve(job("final_example.json"));
    EXPECT_TRUE(r.data["points"][0]["canonical_bound"]["met"].get<bool>());
}

TEST(Selftest, CommandPassesAndNamesFaults) {
    std::ostringstream out, err;
    SelftestOptions opt;
    opt.instances = 10;
    EXPECT_EQ(cmd_selftest(opt, out, err), 0);
    opt.corrupt_kodaira_table = true;
    std::ostringstream out2, err2;
    EXPECT_NE(cmd_selftest(opt, out2, err2), 0);
    EXPECT_NE(err2.str().find("kodaira_totality"), std::string::npos);
}
