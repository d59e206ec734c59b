#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace posetbal;

namespace {

std::vector<std::string> names(const std::vector<CheckInfo>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.name);
  return out;
}

}  // namespace

TEST(Verifier, RegistryAndGroups) {
  EXPECT_EQ(check_registry().size(), 21u);
  EXPECT_EQ(resolve_checks("all").size(), 21u);
  EXPECT_EQ(resolve_checks("theorems").size(), 13u);
  EXPECT_EQ(resolve_checks("conjectures").size(), 5u);
  EXPECT_EQ(names(resolve_checks("reports")), (std::vector<std::string>{"gapw", "gaptau", "hdeletex"}));
  // registry order, duplicates dropped
  EXPECT_EQ(names(resolve_checks("winh, xyz,xyz")), (std::vector<std::string>{"xyz", "winh"}));
  EXPECT_THROW(resolve_checks("xyz,bogus"), InvalidArgument);
  EXPECT_THROW(find_check("bogus"), InvalidArgument);
}

TEST(Verifier, TheoremsHoldOnSmallCatalog) {
  SweepResult r = sweep(catalog_range(1, 6), resolve_checks("theorems"));
  EXPECT_EQ(r.hard_failures(), 0u);
  for (const auto& row : r.summary) {
    EXPECT_EQ(row.failures, 0u) << row.check;
    EXPECT_EQ(row.posets + row.skipped, 405u) << row.check;
    if (row.min_slack) EXPECT_GE(*row.min_slack, Rational(0)) << row.check;
  }
}

TEST(Verifier, XyzAgreesWithBruteForce) {
  // Pr(x above every y in Y) >= prod Pr(x above y), counted by enumeration
  for (const auto& p : catalog_range(3, 5)) {
    const auto exts = oracle::extensions(p);
    const auto o = oracle::stats(p);
    const std::size_t n = p.size();
    for (Element x = 0; x < n; ++x)
      for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        if (m >> x & 1) continue;
        std::size_t hits = 0;
        for (const auto& e : exts) {
          const std::size_t px = std::find(e.begin(), e.end(), x) - e.begin();
          bool ok = true;
          for (Element y = 0; y < n; ++y)
            if ((m >> y & 1) && std::find(e.begin(), e.end(), y) - e.begin() > static_cast<long>(px)) ok = false;
          hits += ok;
        }
        Rational rhs(1);
        for (Element y = 0; y < n; ++y)
          if (m >> y & 1) rhs *= o.prec[y][x];
        EXPECT_GE(ratio(Count(static_cast<unsigned long>(hits)), o.e), rhs);
      }
    auto rep = run_checks(p, {find_check("xyz")});
    EXPECT_EQ(rep[0].status, CheckStatus::pass);
  }
}

TEST(Verifier, ConjectureBehaviour) {
  auto chain_reports = run_checks(chain(3), resolve_checks("one-third,varf-literal"));
  EXPECT_EQ(chain_reports[0].status, CheckStatus::skipped);
  EXPECT_EQ(chain_reports[1].status, CheckStatus::fail);
  EXPECT_FALSE(chain_reports[1].hard_failure());

  auto p3 = run_checks(fixture::p3(), {find_check("one-third")});
  EXPECT_EQ(p3[0].status, CheckStatus::pass);
  ASSERT_TRUE(p3[0].extremal);
  EXPECT_EQ(*p3[0].extremal, Rational(0));
}

TEST(Verifier, ReportChecks) {
  auto r = run_checks(fixture::p3(), resolve_checks("reports"));
  ASSERT_EQ(r.size(), 3u);
  for (const auto& c : r) {
    EXPECT_NE(c.status, CheckStatus::fail) << c.check;
    EXPECT_EQ(c.severity, Severity::report);
  }
  // gap / width for P3 is (4/3) / 2
  EXPECT_EQ(r[0].status, CheckStatus::report_only);
  ASSERT_TRUE(r[0].extremal);
  EXPECT_EQ(*r[0].extremal, make_rational(2, 3));
}

TEST(Verifier, CapsTurnIntoSkips) {
  VerifyCaps caps;
  caps.enum_cap = 0;
  auto r = run_checks(fixture::p3(), resolve_checks("corner,winh,xyz"), caps);
  EXPECT_EQ(r[0].status, CheckStatus::pass);  // xyz needs no enumeration
  EXPECT_EQ(r[1].status, CheckStatus::skipped);
  EXPECT_EQ(r[2].status, CheckStatus::skipped);
  EXPECT_FALSE(r[1].note.empty());

  caps = {};
  caps.fishburn_pairs = 2;
  auto f = run_checks(antichain(3), {find_check("fishburn")}, caps);
  EXPECT_EQ(f[0].status, CheckStatus::skipped);
}

TEST(Verifier, SlackTrackerRecordsTheFirstViolation) {
  SlackTracker t("demo", Severity::theorem, fixture::p3());
  EXPECT_TRUE(t.at_least(Rational(2), Rational(1), {0}));
  EXPECT_FALSE(t.at_least(Rational(1), Rational(3), {1}));
  EXPECT_FALSE(t.at_least(Rational(0), Rational(1), {2}));
  CheckReport r = t.finish();
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_TRUE(r.hard_failure());
  EXPECT_EQ(r.instances, 3u);
  EXPECT_EQ(*r.extremal, Rational(-2));
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->elements, std::vector<Element>{1});
  EXPECT_EQ(r.witness->poset, matrix_form(fixture::p3()));
  // the witness poset parses back to the checked poset
  EXPECT_EQ(parse_poset(r.witness->poset), fixture::p3());
}

TEST(Verifier, SweepIsIndependentOfParallelism) {
  const auto posets = catalog_range(1, 5);
  const auto checks = resolve_checks("all");
  std::ostringstream one, four;
  write_jsonl(one, sweep(posets, checks, 1).reports);
  write_jsonl(four, sweep(posets, checks, 4).reports);
  EXPECT_EQ(one.str(), four.str());
  EXPECT_FALSE(one.str().empty());
}

TEST(Verifier, SummaryTable) {
  auto res = sweep(catalog_range(1, 4), resolve_checks("efxy,gapw"));
  ASSERT_EQ(res.summary.size(), 2u);
  EXPECT_EQ(res.summary[0].check, "efxy");
  EXPECT_EQ(res.summary[0].posets, 1u + 2 + 5 + 16);
  EXPECT_TRUE(res.summary[1].extremal);
  std::ostringstream out;
  write_summary(out, res.summary);
  EXPECT_NE(out.str().find("efxy"), std::string::npos);
  EXPECT_EQ(to_json(res.summary[0])["check"], "efxy");
}
