#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace posetbal;

namespace {

// Entropy in bits of the relative order of xs over all extensions.
double brute_entropy(const Poset& p, const std::vector<Element>& xs) {
  const auto exts = oracle::extensions(p);
  std::map<std::vector<Element>, double> freq;
  for (const auto& o : exts) {
    std::vector<Element> pattern;
    for (Element y : o)
      if (std::find(xs.begin(), xs.end(), y) != xs.end()) pattern.push_back(y);
    freq[pattern] += 1;
  }
  double h = 0;
  for (auto& [k, c] : freq) {
    const double q = c / static_cast<double>(exts.size());
    h -= q * std::log2(q);
  }
  return h;
}

}  // namespace

TEST(Balance, ThreeElementExample) {
  BalanceReport b = balance_report(fixture::p3());
  EXPECT_EQ(b.delta, make_rational(1, 3));
  ASSERT_TRUE(b.delta_pair);
  EXPECT_EQ(*b.delta_pair, std::make_pair(Element{0}, Element{2}));
  EXPECT_EQ(b.gap, make_rational(4, 3));
  EXPECT_EQ(b.width, 2u);
  EXPECT_EQ(b.height, 2u);
  EXPECT_EQ(b.piP, 2u);
  EXPECT_EQ(b.sigma2P, make_rational(2, 3));
  ASSERT_TRUE(b.winP);
  EXPECT_EQ(*b.winP, Rational(4));
  EXPECT_EQ(b.delta_x, (std::vector<Rational>{make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)}));
}

TEST(Balance, ChainsAndAntichains) {
  BalanceReport c = balance_report(chain(4));
  EXPECT_EQ(c.delta, Rational(0));
  EXPECT_EQ(c.gap, Rational(1));
  ASSERT_TRUE(c.tau);
  EXPECT_EQ(c.tau->value, 0.0);
  BalanceReport a = balance_report(antichain(3));
  EXPECT_EQ(a.delta, make_rational(1, 2));
  EXPECT_EQ(a.gap, Rational(2));
  ASSERT_TRUE(a.tau);
  EXPECT_NEAR(a.tau->value, std::log2(6.0) / 3, 1e-12);
  EXPECT_FALSE(a.tau->truncated);
}

TEST(Balance, HeightGap) {
  EXPECT_EQ(height_gap({}), Rational(1));
  EXPECT_EQ(height_gap({Rational(2), Rational(2), Rational(2)}), Rational(2));
  EXPECT_EQ(height_gap({make_rational(1, 2)}), make_rational(3, 2));
}

TEST(Balance, DeltaMatchesBruteForce) {
  for (const auto& p : catalog_range(2, 6)) {
    const auto o = oracle::stats(p);
    Rational want(0);
    for (Element x = 0; x < p.size(); ++x)
      for (Element y = x + 1; y < p.size(); ++y) want = std::max(want, std::min(o.prec[x][y], o.prec[y][x]));
    BalanceReport b = balance_report(p);
    EXPECT_EQ(b.delta, want) << matrix_form(p);
    EXPECT_EQ(delta_k(p, p.all(), 2).value, want) << matrix_form(p);
    // every non-chain of this size has a pair within [1/3, 2/3]
    if (width(p) > 1) EXPECT_GE(b.delta, make_rational(1, 3)) << matrix_form(p);
  }
}

TEST(Balance, TauMatchesBruteForce) {
  BalanceOptions opt;
  for (const auto& p : catalog_range(2, 5)) {
    BalanceReport b = balance_report(p, opt);
    ASSERT_TRUE(b.tau);
    double want = 0;
    detail::for_each_subset_up_to(p.size(), p.size(), [&](std::vector<Element>& xs) {
      if (xs.size() >= 2) want = std::max(want, brute_entropy(p, xs) / static_cast<double>(xs.size()));
    });
    EXPECT_NEAR(b.tau->value, want, 1e-9) << matrix_form(p);
    // the lattice path gives the same entropy as the enumeration path
    std::vector<Element> w = b.tau->witness.elements();
    if (w.size() >= 2) EXPECT_NEAR(restricted_order_entropy(p, w, count_extensions(p)) / w.size(), b.tau->value, 1e-9);
  }
}

TEST(Balance, TauIsSkippedOrTruncated) {
  BalanceOptions opt;
  opt.tau_max_n = 4;
  EXPECT_FALSE(balance_report(antichain(5), opt).tau);
  opt.tau_max_n = 10;
  opt.tau_subset_cap = 2;
  auto b = balance_report(antichain(4), opt);
  ASSERT_TRUE(b.tau);
  EXPECT_TRUE(b.tau->truncated);
  EXPECT_NEAR(b.tau->value, 0.5, 1e-12);
}

TEST(Balance, DeltaK) {
  DeltaK d = delta_k(antichain(3), antichain(3).all(), 3);
  EXPECT_EQ(d.value, make_rational(1, 6));
  EXPECT_EQ(d.witness.size(), 3u);
  EXPECT_EQ(delta_k(chain(3), chain(3).all(), 2).value, Rational(0));
  EXPECT_EQ(delta_k(chain(3), chain(3).all(), 1).value, Rational(1));
  EXPECT_THROW(delta_k(chain(3), chain(3).all(), 4), InvalidArgument);
  EXPECT_THROW(delta_k(antichain(12), antichain(12).all(), 6, 1000), BudgetExceeded);
}

TEST(Balance, ChainGapAndDiffuseness) {
  Poset p = fixture::p3();
  const std::vector<Element> c{0, 1};
  EXPECT_EQ(gap_chain(p, c), make_rational(4, 3));
  const std::vector<Element> bad{1, 0};
  EXPECT_THROW(gap_chain(p, bad), NotAChain);
  DiffuseResult r = is_diffuse(p, 2, c, make_rational(1, 2));
  EXPECT_TRUE(r.diffuse);
  EXPECT_EQ(r.cells, (std::vector<Rational>{make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)}));
  EXPECT_FALSE(is_diffuse(p, 2, c, make_rational(1, 3)).diffuse);
  EXPECT_THROW(is_diffuse(p, 0, c, make_rational(1, 2)), InvalidArgument);
}

TEST(Balance, FractionalMatchings) {
  auto v = evaluate_fractional_matching(chain(3), level_matching(chain(3)));
  EXPECT_EQ(v.weighted_square_sum, Rational(3));
  FractionalMatching m{{{ElementSet{1, 2}, make_rational(1, 2)}}};
  auto w = evaluate_fractional_matching(fixture::vee(), m, exact_stats(fixture::vee()).win);
  EXPECT_EQ(w.weighted_square_sum, Rational(2));
  ASSERT_TRUE(w.weighted_win_sum);
  FractionalMatching heavy{{{ElementSet{1}, Rational(1)}, {ElementSet{1, 2}, make_rational(1, 2)}}};
  EXPECT_THROW(evaluate_fractional_matching(fixture::vee(), heavy), InvalidMatching);
  FractionalMatching comparable{{{ElementSet{0, 1}, make_rational(1, 2)}}};
  EXPECT_THROW(evaluate_fractional_matching(fixture::vee(), comparable), InvalidMatching);
  FractionalMatching negative{{{ElementSet{1}, make_rational(-1, 2)}}};
  EXPECT_THROW(evaluate_fractional_matching(fixture::vee(), negative), InvalidMatching);
}
