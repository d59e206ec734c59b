#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace posetbal;

TEST(Geometry, ThreeElementExample) {
  GeometryReport g = geometry_report(fixture::p3());
  EXPECT_EQ(g.H, (std::vector<Rational>{make_rational(1, 3), make_rational(2, 3), make_rational(1, 2)}));
  ASSERT_TRUE(g.Win);
  EXPECT_EQ(*g.Win, (std::vector<Rational>{make_rational(2, 3), make_rational(2, 3), Rational(1)}));
  EXPECT_EQ(g.d, (std::vector<Rational>{make_rational(1, 2), make_rational(1, 2), Rational(1)}));
  EXPECT_EQ(g.vol, make_rational(1, 2));
  // an unrelated element is uniform on [0,1]
  EXPECT_EQ(g.varF[2], make_rational(1, 12));
}

TEST(Geometry, ChainAndAntichain) {
  GeometryReport c = geometry_report(chain(4));
  EXPECT_EQ(c.vol, make_rational(1, 24));
  for (Element x = 0; x < 4; ++x) EXPECT_EQ(c.H[x], make_rational(x + 1, 5));
  GeometryReport a = geometry_report(antichain(4));
  EXPECT_EQ(a.vol, Rational(1));
  for (Element x = 0; x < 4; ++x) {
    EXPECT_EQ(a.d[x], Rational(1));
    EXPECT_EQ(a.varF[x], make_rational(1, 12));
    EXPECT_EQ((*a.Win)[x], Rational(1));
  }
}

TEST(Geometry, MatchesBruteForce) {
  for (const auto& p : catalog_range(1, 6)) {
    const std::size_t n = p.size();
    const auto o = oracle::stats(p);
    GeometryReport g = geometry_report(p);
    EXPECT_EQ(g.vol, ratio(o.e, factorial(n)));
    for (Element x = 0; x < n; ++x) {
      const Count ex(static_cast<unsigned long>(oracle::extensions(delete_element(p, x)).size()));
      EXPECT_EQ(g.d[x], ratio(o.e, Count(ex * static_cast<unsigned long>(n))));
      EXPECT_EQ((*g.Win)[x], o.win[x] / static_cast<unsigned long>(n + 1));
      EXPECT_EQ(g.H[x], o.h[x] / static_cast<unsigned long>(n + 1));
    }
  }
}

TEST(Geometry, VarFIsTheCoordinateVariance) {
  Poset p = Poset::from_relations(4, {{0, 1}, {0, 2}, {2, 3}});
  GeometryReport g = geometry_report(p);
  IdealLattice lat(p);
  for (Element x = 0; x < 4; ++x) {
    const double mean = to_double(g.H[x]);
    Estimate v = estimate_point_statistic(
        lat, [&](const PolytopePoint& q) { return (q.coords[x] - mean) * (q.coords[x] - mean); }, 40000, 30 + x);
    EXPECT_TRUE(v.agrees_with(to_double(g.varF[x]))) << x << ' ' << v.mean;
  }
}

TEST(Geometry, TheoremChecksHoldOnCatalog) {
  for (const auto& p : catalog_range(1, 6)) {
    const ExtensionStats s = exact_stats(p);
    const GeometryReport g = geometry_report(s, deletion_counts(p));
    EXPECT_EQ(check_corner_bounds(p, g).status, CheckStatus::pass) << matrix_form(p);
    EXPECT_EQ(check_win_variance_inequalities(p, s, g).status, CheckStatus::pass) << matrix_form(p);
    EXPECT_EQ(check_winh(p, g).status, CheckStatus::pass) << matrix_form(p);
  }
}

TEST(Geometry, UncorrectedVarianceBoundFails) {
  Poset c = chain(2);
  CheckReport r = check_varf_literal(c, exact_stats(c));
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_EQ(r.severity, Severity::conjecture);
  ASSERT_TRUE(r.extremal);
  EXPECT_EQ(*r.extremal, make_rational(-1, 12));
  // antichains miss it too: σ² = (n²-1)/12 against n²/12
  Poset a = antichain(3);
  CheckReport ra = check_varf_literal(a, exact_stats(a));
  EXPECT_EQ(ra.status, CheckStatus::fail);
  EXPECT_EQ(*ra.extremal, make_rational(-1, 12));
}

TEST(Geometry, WinNeedsEnumeration) {
  GeometryReport g = geometry_report(fixture::p3(), 0);
  EXPECT_FALSE(g.Win);
  EXPECT_THROW(check_corner_bounds(fixture::p3(), g), StatUnavailable);
  EXPECT_THROW(winvar_ratios(g), StatUnavailable);
}

TEST(Geometry, WinVarRatios) {
  GeometryReport g = geometry_report(antichain(3));
  auto r = winvar_ratios(g);
  ASSERT_TRUE(r.min_ratio);
  EXPECT_EQ(*r.min_ratio, Rational(12));
  CheckReport c = conjecture_winvar_ratio(antichain(3), g);
  EXPECT_EQ(c.severity, Severity::conjecture);
}
