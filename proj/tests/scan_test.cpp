#include <sstream>

#include <gtest/gtest.h>

#include "gaussprod/scan.hpp"
#include "gaussprod/selftest.hpp"

using namespace gaussprod;

namespace {

ScanConfig small_config(u64 p_max, std::vector<u64> qs, std::vector<TheoremId> ids)
{
    ScanConfig c;
    c.p_max = p_max;
    c.q_set = std::move(qs);
    c.theorems = std::move(ids);
    return c;
}

std::string json_of(const ScanConfig& c) { return report_json(run_scan(c)).dump(2); }

} // namespace

TEST(Scan, T1BelowHundredWithQ3)
{
    // p ≡ 3 mod 4, p ≡ 1 mod 3, p < 100: 7, 19, 31, 43, 67, 79
    const auto r = run_scan(small_config(100, {3}, {TheoremId::t1}));
    const auto& t = r.totals.at(TheoremId::t1);
    EXPECT_EQ(t.applicable, 6u);
    EXPECT_EQ(t.passed, 6u);
    EXPECT_EQ(r.failed(), 0u);
    std::vector<u64> ps;
    for (const auto& v : r.verdicts) ps.push_back(v.p);
    EXPECT_EQ(ps, (std::vector<u64>{7, 19, 31, 43, 67, 79}));
}

TEST(Scan, EmptyRegime)
{
    const auto r = run_scan(small_config(10, {7}, {TheoremId::t1}));
    EXPECT_EQ(r.totals.at(TheoremId::t1).applicable, 0u);
    EXPECT_TRUE(r.verdicts.empty());
}

TEST(Scan, ConfigValidation)
{
    EXPECT_THROW(run_scan(small_config(5, {3}, {TheoremId::t1})), precondition_error);
    EXPECT_THROW(run_scan(small_config(100, {9}, {TheoremId::t1})), precondition_error);
    EXPECT_THROW(run_scan(small_config(100, {2}, {TheoremId::t1})), precondition_error);
    EXPECT_THROW(run_scan(small_config(100, {3}, {})), precondition_error);
    EXPECT_THROW(run_scan(small_config(100, {3}, {TheoremId::beta})), precondition_error);
    auto c = small_config(100, {3}, {TheoremId::t1});
    c.workers = 0;
    EXPECT_THROW(run_scan(c), precondition_error);
}

TEST(Scan, AllTheoremsPassBelowFiveThousand)
{
    ScanConfig c;
    c.p_max = 5000;
    c.q_max = 47;
    const auto r = run_scan(c);
    EXPECT_EQ(r.failed(), 0u);
    for (auto id : scan_theorems) EXPECT_GT(r.totals.at(id).applicable, 0u) << to_string(id);
    const auto& ea = r.totals.at(TheoremId::eq_a);
    EXPECT_EQ(r.eq_a_by_p_mod_4.at(1).applicable + r.eq_a_by_p_mod_4.at(3).applicable, ea.applicable);
}

TEST(Scan, VerdictsSortedByPairThenTheorem)
{
    const auto r = run_scan(small_config(2000, {3, 5, 7}, {scan_theorems.begin(), scan_theorems.end()}));
    EXPECT_TRUE(std::is_sorted(r.verdicts.begin(), r.verdicts.end(), by_pair_then_theorem));
}

TEST(Scan, WorkerCountDoesNotChangeOutput)
{
    auto c = small_config(6000, {}, {TheoremId::t1, TheoremId::corollary, TheoremId::eq2_parity,
                                     TheoremId::symmetry, TheoremId::t3, TheoremId::mordell});
    c.q_max = 31;
    const std::string one = json_of(c);
    for (unsigned w : {2u, 3u, 8u}) {
        c.workers = w;
        EXPECT_EQ(json_of(c), one) << w;
    }
}

TEST(Report, JsonSchema)
{
    const auto j = report_json(run_scan(small_config(100, {3}, {TheoremId::t1})));
    EXPECT_EQ(j["config"]["p_max"], 100);
    EXPECT_EQ(j["config"]["q_set"], nlohmann::json::array({3}));
    EXPECT_EQ(j["config"]["theorems"], nlohmann::json::array({"t1"}));
    EXPECT_EQ(j["totals"]["t1"]["applicable"], 6);
    EXPECT_EQ(j["totals"]["t1"]["passed"], 6);
    EXPECT_EQ(j["totals"]["t1"]["failed"], 0);
    EXPECT_TRUE(j["failures"].is_array());
    EXPECT_TRUE(j["failures"].empty());
    EXPECT_TRUE(j["runtime_ms"].is_null());

    auto c = small_config(100, {3}, {TheoremId::t1});
    c.timing = true;
    EXPECT_TRUE(report_json(run_scan(c))["runtime_ms"].is_number());
}

TEST(Report, JsonListsInjectedFailure)
{
    auto r = run_scan(small_config(100, {3}, {TheoremId::t1}));
    auto& v = r.verdicts.front();
    v.outcome = Outcome::fail;
    v.computed = "-1";
    const auto j = report_json(r);
    ASSERT_EQ(j["failures"].size(), 1u);
    EXPECT_EQ(j["failures"][0]["theorem_id"], "t1");
    EXPECT_EQ(j["failures"][0]["p"], 7);
    EXPECT_EQ(j["failures"][0]["q"], 3);
    EXPECT_EQ(j["failures"][0]["predicted"], "+1");
    EXPECT_EQ(j["failures"][0]["computed"], "-1");
}

TEST(Report, Csv)
{
    const auto r = run_scan(small_config(100, {3}, {TheoremId::t1}));
    std::ostringstream os;
    write_csv(os, r);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "theorem_id,p,q,predicted,computed,pass,detail");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(line.rfind("t1,", 0), 0u) << line;
    }
    EXPECT_EQ(rows, 6);
}

TEST(Report, CsvQuotesFieldsWithCommas)
{
    EXPECT_EQ(detail::csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(detail::csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    EXPECT_EQ(detail::csv_field("plain"), "plain");
}

TEST(Report, HumanSummaries)
{
    const auto r = run_scan(small_config(1000, {3, 7}, {TheoremId::t1, TheoremId::corollary}));
    std::ostringstream os;
    write_human(os, r);
    const std::string s = os.str();
    EXPECT_NE(s.find("q=3: Π_1 is a quadratic residue"), std::string::npos) << s;
    EXPECT_NE(s.find("q=7"), std::string::npos) << s;
}

TEST(SelfTest, PassesOnFreshBuild)
{
    std::ostringstream os;
    const auto r = run_selftest(os);
    EXPECT_TRUE(r.ok) << os.str();
    EXPECT_TRUE(r.first_failure.empty());
    for (const char* m : {"arith", "products", "classnum", "theorems", "scan"}) {
        ASSERT_TRUE(r.per_module.count(m)) << m;
        EXPECT_EQ(r.per_module.at(m).first, r.per_module.at(m).second) << m;
    }
    EXPECT_NE(os.str().find("selftest passed"), std::string::npos);
}

TEST(SelfTest, CorruptedLegendreNamesFirstFixture)
{
    SelfTestHooks broken;
    broken.legendre = [](i64 a, u64 p) {
        const Symbol s = legendre(a, p);
        return s == Symbol::zero ? s : s * Symbol::minus_one;
    };
    std::ostringstream os;
    const auto r = run_selftest(os, broken);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.first_failure, "arith/legendre(1,3)");
    EXPECT_NE(os.str().find("FAIL arith/legendre(1,3)"), std::string::npos) << os.str();
}
