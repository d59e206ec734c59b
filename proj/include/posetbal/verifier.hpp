#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "posetbal/balance.hpp"
#include "posetbal/check_report.hpp"
#include "posetbal/errors.hpp"
#include "posetbal/extensions.hpp"
#include "posetbal/geometry.hpp"
#include "posetbal/ideal_lattice.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/rational.hpp"

namespace posetbal {

struct VerifyCaps {
  std::size_t ideal_cap = kDefaultIdealCap;
  std::uint64_t enum_cap = kDefaultEnumCap;
  std::size_t xyz_max_set = 4;                      // largest |Y| for XYZ
  std::uint64_t fishburn_pairs = std::uint64_t{1} << 20;  // filter pairs examined per poset
  Rational gaptau_threshold = Rational(2);          // h-gap that counts as large
  std::size_t tau_subset_cap = 5;
};

/// Lazily computed exact data for one poset, shared by all checks run on it.
class Analysis {
 public:
  Analysis(const Poset& p, const VerifyCaps& caps) : poset_(p), caps_(caps) {}

  const Poset& poset() const { return poset_; }
  const VerifyCaps& caps() const { return caps_; }

  const IdealLattice& lattice() {
    if (!lattice_) lattice_.emplace(poset_, caps_.ideal_cap);
    return *lattice_;
  }

  const ExtensionStats& stats() {
    if (!stats_) stats_ = exact_stats(lattice(), caps_.enum_cap);
    return *stats_;
  }

  /// Lattice-only statistics of P - x (no enumeration).
  const ExtensionStats& deleted_stats(Element x) {
    if (deleted_.empty()) deleted_.resize(poset_.size());
    if (!deleted_[x]) deleted_[x] = exact_stats(IdealLattice(delete_element(poset_, x), caps_.ideal_cap), 0);
    return *deleted_[x];
  }

  const GeometryReport& geometry() {
    if (!geometry_) {
      std::vector<Count> without;
      for (Element x = 0; x < poset_.size(); ++x) without.push_back(deleted_stats(x).e);
      geometry_ = geometry_report(stats(), without);
    }
    return *geometry_;
  }

  const std::vector<Rational>& win() {
    const auto& s = stats();
    if (!s.win) throw StatUnavailable("win needs a full enumeration (raise the enumeration cap)");
    return *s.win;
  }

 private:
  Poset poset_;
  VerifyCaps caps_;
  std::optional<IdealLattice> lattice_;
  std::optional<ExtensionStats> stats_;
  std::vector<std::optional<ExtensionStats>> deleted_;
  std::optional<GeometryReport> geometry_;
};

namespace detail {

inline std::vector<Element> with_front(Element x, const std::vector<Element>& ys) {
  std::vector<Element> out{x};
  out.insert(out.end(), ys.begin(), ys.end());
  return out;
}

inline Rational rounded(double v) {
  const double scaled = std::round(v * 1e9);
  return ratio(Count(static_cast<long>(scaled)), Count(1'000'000'000L));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Proved statements

/// Pr(x ≻ Y) >= prod Pr(x ≻ y) for every x and Y ⊆ P - x with |Y| <= cap.
inline CheckReport check_xyz(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  SlackTracker t("xyz", Severity::theorem, p);
  for (Element x = 0; x < p.size(); ++x) {
    const std::vector<Element> others = p.all().without(x).elements();
    detail::for_each_subset_up_to(others.size(), a.caps().xyz_max_set, [&](std::vector<Element>& idx) {
      std::vector<Element> ys;
      Rational rhs(1);
      for (Element i : idx) {
        ys.push_back(others[i]);
        rhs *= s.prec[others[i]][x];
      }
      Rational lhs;
      bool impossible = false;
      std::vector<Relation> rels;
      for (Element y : ys) {
        if (p.less(x, y)) impossible = true;
        else if (!p.less(y, x)) rels.emplace_back(y, x);
      }
      if (impossible) lhs = 0;
      else if (rels.empty()) lhs = 1;
      else lhs = ratio(count_extensions(add_relations(p, rels), a.caps().ideal_cap), s.e);
      t.at_least(lhs, rhs, detail::with_front(x, ys));
    });
  }
  return t.finish();
}

/// e(K∪L) e(K∩L) / (e(K) e(L)) >= |K∪L|! |K∩L|! / (|K|! |L|!) over filter pairs.
inline CheckReport check_fishburn(Analysis& a) {
  const Poset& p = a.poset();
  const auto& lat = a.lattice();
  const std::uint64_t m = lat.size();
  if (m * (m + 1) / 2 > a.caps().fishburn_pairs) {
    return skipped_report("fishburn", Severity::theorem, p,
                          std::to_string(m * (m + 1) / 2) + " filter pairs exceed the budget");
  }
  SlackTracker t("fishburn", Severity::theorem, p);
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const ElementSet ii = lat.ideal(i), jj = lat.ideal(j);
      // filter K = P - I, so K ∪ L = P - (I ∩ J) and K ∩ L = P - (I ∪ J)
      const std::size_t cup = lat.at(ii & jj), cap = lat.at(ii | jj);
      const Count& ek = lat.up(i);
      const Count& el = lat.up(j);
      Rational lhs = ratio(lat.up(cup) * lat.up(cap), ek * el);
      Rational rhs = ratio(factorial(n - (ii & jj).size()) * factorial(n - (ii | jj).size()),
                           factorial(n - ii.size()) * factorial(n - jj.size()));
      t.at_least(lhs, rhs, {}, {{"K", (p.all() - ii).to_string()}, {"L", (p.all() - jj).to_string()}});
    }
  }
  return t.finish();
}

/// Σ_{x∈A} win(x) >= (n+1)|A|²/n for every non-empty antichain A.
inline CheckReport check_tsumwin(Analysis& a) {
  const Poset& p = a.poset();
  const auto& win = a.win();
  SlackTracker t("tsumwin", Severity::theorem, p);
  const auto n = static_cast<unsigned long>(p.size());
  for_each_antichain(p, p.size(), [&](ElementSet as) {
    if (as.empty()) return;
    Rational sum(0);
    for (Element x : as) sum += win[x];
    const auto k = static_cast<unsigned long>(as.size());
    t.at_least(sum, ratio(Count((n + 1) * k * k), Count(n)), as.elements());
  });
  return t.finish();
}

/// e(P) >= Σ_{x∈A} e(P - x) for every non-empty antichain A.
inline CheckReport check_tehs(Analysis& a) {
  const Poset& p = a.poset();
  std::vector<Count> without;
  for (Element x = 0; x < p.size(); ++x) without.push_back(a.deleted_stats(x).e);
  const Count& e = a.stats().e;
  SlackTracker t("tehs", Severity::theorem, p);
  for_each_antichain(p, p.size(), [&](ElementSet as) {
    if (as.empty()) return;
    Count sum(0);
    for (Element x : as) sum += without[x];
    t.at_least(Rational(e), Rational(sum), as.elements());
  });
  return t.finish();
}

/// (a) h(x) <= 1/Pr(f(x)=1); (b) h(y) - h(x) <= 1/Pr(f(y)-f(x)=1), both when
/// the probability is positive.
inline CheckReport check_lsks(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  if (!s.difference_dist) throw StatUnavailable("difference distribution needs a full enumeration");
  SlackTracker t("lsks", Severity::theorem, p);
  for (Element x = 0; x < p.size(); ++x) {
    const Rational& first = s.rank_dist[x][0];
    if (first > 0) t.at_least(1 / first, s.h[x], {x}, {{"part", "a"}});
  }
  for (Element x = 0; x < p.size(); ++x) {
    for (Element y = 0; y < p.size(); ++y) {
      if (x == y) continue;
      const Rational& adj = (*s.difference_dist)[x][y][1];
      if (adj > 0) t.at_least(1 / adj, s.h[y] - s.h[x], {x, y}, {{"part", "b"}});
    }
  }
  return t.finish();
}

/// Log-concavity of k -> Pr(f(x)=k) and of k -> Pr(f(y)-f(x)=k), k >= 1.
inline CheckReport check_logconcavity(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  if (!s.difference_dist) throw StatUnavailable("difference distribution needs a full enumeration");
  SlackTracker t("logconcavity", Severity::theorem, p);
  const std::size_t n = p.size();
  for (Element x = 0; x < n; ++x) {
    const auto& r = s.rank_dist[x];
    for (std::size_t k = 1; k + 1 < n; ++k)
      t.at_least(r[k] * r[k], r[k - 1] * r[k + 1], {x}, {{"sequence", "rank"}, {"k", std::to_string(k + 1)}});
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (x == y) continue;
      const auto& d = (*s.difference_dist)[x][y];
      for (std::size_t k = 2; k + 1 < n; ++k)
        t.at_least(d[k] * d[k], d[k - 1] * d[k + 1], {x, y}, {{"sequence", "difference"}, {"k", std::to_string(k)}});
    }
  }
  return t.finish();
}

/// h(x) <= h(y) implies Pr(x ≺ y) >= 1/e (rational under-approximation).
inline CheckReport check_grunbaum_pairs(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  SlackTracker t("grunbaum-pairs", Severity::theorem, p);
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = 0; y < p.size(); ++y)
      if (x != y && s.h[x] <= s.h[y]) t.at_least(s.prec[x][y], inv_e_lower(), {x, y});
  return t.finish();
}

/// E|f(x) - f(y)| >= win(x)/4 for all ordered pairs.
inline CheckReport check_efxy(Analysis& a) {
  const Poset& p = a.poset();
  const auto& win = a.win();
  const auto& s = a.stats();
  SlackTracker t("efxy", Severity::theorem, p);
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = 0; y < p.size(); ++y)
      if (x != y) t.at_least((*s.eabsdiff)[x][y], win[x] / 4, {x, y});
  return t.finish();
}

/// win(x) >= 2 h(x) / α(x).
inline CheckReport check_cl1(Analysis& a) {
  const Poset& p = a.poset();
  const auto& win = a.win();
  const auto& s = a.stats();
  SlackTracker t("cl1", Severity::theorem, p);
  for (Element x = 0; x < p.size(); ++x)
    t.at_least(win[x], 2 * s.h[x] / static_cast<unsigned long>(alpha(p, x)), {x});
  return t.finish();
}

inline CheckReport check_corner(Analysis& a) { return check_corner_bounds(a.poset(), a.geometry()); }

inline CheckReport check_winvar(Analysis& a) {
  return check_win_variance_inequalities(a.poset(), a.stats(), a.geometry());
}

inline CheckReport check_winh_bound(Analysis& a) { return check_winh(a.poset(), a.geometry()); }

namespace detail {
/// max{h(x) : x ∈ A} >= |A| - |max A| + 1 for one ideal.
inline void ideal_height_bound(SlackTracker& t, const Poset& p, const ExtensionStats& s, ElementSet ideal) {
  Rational top(0);
  for (Element x : ideal) top = std::max(top, s.h[x]);
  const long rhs = static_cast<long>(ideal.size()) - static_cast<long>(maximal_in(p, ideal).size()) + 1;
  t.at_least(top, Rational(rhs), ideal.elements());
}
}  // namespace detail

/// The ideal height bound at A = P.
inline CheckReport check_a1_full(Analysis& a) {
  SlackTracker t("a1-full", Severity::theorem, a.poset());
  if (a.poset().size() > 0) detail::ideal_height_bound(t, a.poset(), a.stats(), a.poset().all());
  return t.finish();
}

// ---------------------------------------------------------------------------
// Conjectures

/// δ(P) >= 1/3 unless P is a chain.
inline CheckReport check_one_third(Analysis& a) {
  const Poset& p = a.poset();
  if (is_chain(p)) return skipped_report("one-third", Severity::conjecture, p, "chain");
  const auto& s = a.stats();
  Rational best(-1);
  std::pair<Element, Element> pair{0, 0};
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = x + 1; y < p.size(); ++y) {
      Rational d = std::min(s.prec[x][y], s.prec[y][x]);
      if (d > best) {
        best = d;
        pair = {x, y};
      }
    }
  SlackTracker t("one-third", Severity::conjecture, p);
  t.at_least(best, make_rational(1, 3), {pair.first, pair.second});
  t.value("delta", to_string(best));
  return t.finish();
}

/// The ideal height bound for every non-empty ideal.
inline CheckReport check_a1(Analysis& a) {
  const Poset& p = a.poset();
  const auto& lat = a.lattice();
  const auto& s = a.stats();
  SlackTracker t("a1", Severity::conjecture, p);
  for (std::size_t i = 1; i < lat.size(); ++i) detail::ideal_height_bound(t, p, s, lat.ideal(i));
  return t.finish();
}

inline CheckReport check_varf_discrete(Analysis& a) { return check_varf_literal(a.poset(), a.stats()); }

inline CheckReport check_winvar_prime(Analysis& a) { return conjecture_winvar_ratio(a.poset(), a.geometry()); }

/// (a) Σ_{y≠x} max(h_P(y) - h_{P-x}(y), 0) <= n - 1 and
/// (b) Σ_{y≠x} |H_P(y) - H_{P-x}(y)| <= (n-1)/(n+1), for every x. The
/// variant of (a) with |h_P(y) - h_{P-x}(y)| is reported, not checked.
inline CheckReport check_increase_h(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  const std::size_t n = p.size();
  SlackTracker t("increase-h", Severity::conjecture, p);
  Rational worst_abs(0);
  std::optional<Element> worst_abs_at;
  for (Element x = 0; x < n; ++x) {
    const auto& d = a.deleted_stats(x);
    Rational up(0), abs_sum(0), normalized(0);
    for (Element y = 0; y < n; ++y) {
      if (y == x) continue;
      const Rational& hd = d.h[y > x ? y - 1 : y];
      Rational diff = s.h[y] - hd;
      if (diff > 0) up += diff;
      abs_sum += abs(diff);
      normalized += abs(s.h[y] / static_cast<unsigned long>(n + 1) - hd / static_cast<unsigned long>(n));
    }
    t.at_least(Rational(static_cast<unsigned long>(n - 1)), up, {x}, {{"part", "a"}});
    t.at_least(make_rational(static_cast<long>(n - 1), n + 1), normalized, {x}, {{"part", "b"}});
    if (!worst_abs_at || abs_sum > worst_abs) {
      worst_abs = abs_sum;
      worst_abs_at = x;
    }
  }
  if (worst_abs_at) {
    t.value("abs_variant_max_sum", to_string(worst_abs));
    t.value("abs_variant_at", std::to_string(*worst_abs_at));
    t.value("abs_variant_holds", worst_abs <= static_cast<unsigned long>(n - 1) ? "true" : "false");
  }
  return t.finish();
}

// ---------------------------------------------------------------------------
// Reports

/// gap(P) / w(P), plus gap / (w² e^w) and the gap of a longest chain.
inline CheckReport report_gapw(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  SlackTracker t("gapw", Severity::report, p);
  auto& r = t.report();
  r.status = CheckStatus::report_only;
  const std::size_t w = width(p);
  const Rational gap = height_gap(s.h);
  if (w == 0) return t.finish();
  const Rational ratio_w = gap / static_cast<unsigned long>(w);
  r.extremal = ratio_w;
  r.instances = 1;
  t.value("gap", to_string(gap));
  t.value("width", std::to_string(w));
  t.value("gap_over_width", to_string(ratio_w));
  const double wd = static_cast<double>(w);
  std::ostringstream os;
  os.precision(10);
  os << gap.get_d() / (wd * wd * std::exp(wd));
  t.value("gap_over_w2_exp_w", os.str());
  const auto c = longest_chain(p);
  const Rational gc = gap_chain(p, c, s);
  t.value("longest_chain_gap", to_string(gc));
  t.value("longest_chain_gap_over_width", to_string(gc / static_cast<unsigned long>(w)));
  return t.finish();
}

/// Over ideal splits D | U whose height gap min_U h - max_D h reaches the
/// threshold, the best |X|^{-1} H(σ|X) with X inside max(D) or min(U).
/// Reports the smallest such best value.
inline CheckReport report_gaptau(Analysis& a) {
  const Poset& p = a.poset();
  const auto& lat = a.lattice();
  const auto& s = a.stats();
  SlackTracker t("gaptau", Severity::report, p);
  auto& r = t.report();
  r.status = CheckStatus::report_only;
  std::map<std::uint64_t, double> memo;
  auto best_in = [&](ElementSet pool) {
    double best = 0;
    const auto xs = pool.elements();
    detail::for_each_subset_up_to(xs.size(), a.caps().tau_subset_cap, [&](std::vector<Element>& idx) {
      if (idx.size() < 2) return;
      std::vector<Element> sub;
      ElementSet key;
      for (Element i : idx) {
        sub.push_back(xs[i]);
        key.insert(xs[i]);
      }
      auto it = memo.find(key.mask());
      if (it == memo.end())
        it = memo.emplace(key.mask(), restricted_order_entropy(p, sub, s.e, a.caps().ideal_cap) / sub.size()).first;
      best = std::max(best, it->second);
    });
    return best;
  };
  std::optional<double> worst;
  std::optional<ElementSet> worst_split;
  for (std::size_t i = 1; i + 1 < lat.size(); ++i) {
    const ElementSet d = lat.ideal(i), u = p.all() - d;
    Rational top_d(0), bottom_u(static_cast<unsigned long>(p.size() + 1));
    for (Element x : d) top_d = std::max(top_d, s.h[x]);
    for (Element x : u) bottom_u = std::min(bottom_u, s.h[x]);
    if (bottom_u - top_d < a.caps().gaptau_threshold) continue;
    ++r.instances;
    const double v = std::max(best_in(maximal_in(p, d)), best_in(minimal_in(p, u)));
    if (!worst || v < *worst) {
      worst = v;
      worst_split = d;
    }
  }
  t.value("threshold", to_string(a.caps().gaptau_threshold));
  if (worst) {
    r.extremal = detail::rounded(*worst);
    t.value("min_best_entropy_ratio", to_string(*r.extremal));
    t.value("ideal", worst_split->to_string());
  } else {
    t.note("no ideal split reaches the threshold");
  }
  return t.finish();
}

/// max |h_P(y) - h_{P-x}(y)|, overall and restricted to the three regimes:
/// (a) a chain x < ... < y with at least n/2 steps, (b) cover-graph distance
/// at least n/2, (c) π(x) <= 1.
inline CheckReport report_hdeletex(Analysis& a) {
  const Poset& p = a.poset();
  const auto& s = a.stats();
  const std::size_t n = p.size();
  SlackTracker t("hdeletex", Severity::report, p);
  auto& r = t.report();
  r.status = CheckStatus::report_only;
  if (n < 2) return t.finish();

  // longest[x][y]: steps in a longest chain from x up to y (0 if x not< y)
  std::vector<std::vector<std::size_t>> longest(n, std::vector<std::size_t>(n, 0));
  const auto topo = topological_order(p);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const Element x = *it;
    for (Element c : p.upper_covers(x)) {
      longest[x][c] = std::max<std::size_t>(longest[x][c], 1);
      for (Element y : p.above(c)) longest[x][y] = std::max(longest[x][y], longest[c][y] + 1);
    }
  }
  // undirected cover-graph distances
  const std::size_t far = n + 1;
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, far));
  for (Element x = 0; x < n; ++x) {
    std::queue<Element> q;
    dist[x][x] = 0;
    q.push(x);
    while (!q.empty()) {
      Element u = q.front();
      q.pop();
      for (Element v : p.lower_covers(u) | p.upper_covers(u))
        if (dist[x][v] == far) {
          dist[x][v] = dist[x][u] + 1;
          q.push(v);
        }
    }
  }
  const std::size_t half = (n + 1) / 2;
  Rational overall(0), case_a(0), case_b(0), case_c(0);
  std::vector<Element> at{0, 1};
  for (Element x = 0; x < n; ++x) {
    const auto& d = a.deleted_stats(x);
    const bool c_regime = pi(p, x) <= 1;
    for (Element y = 0; y < n; ++y) {
      if (y == x) continue;
      Rational change = abs(s.h[y] - d.h[y > x ? y - 1 : y]);
      ++r.instances;
      if (change > overall) {
        overall = change;
        at = {x, y};
      }
      if (longest[x][y] >= half) case_a = std::max(case_a, change);
      if (dist[x][y] != far && dist[x][y] >= half) case_b = std::max(case_b, change);
      if (c_regime) case_c = std::max(case_c, change);
    }
  }
  r.extremal = overall;
  t.value("max_change", to_string(overall));
  t.value("at", std::to_string(at[0]) + "," + std::to_string(at[1]));
  t.value("max_change_long_chain", to_string(case_a));
  t.value("max_change_far_in_cover_graph", to_string(case_b));
  t.value("max_change_small_pi", to_string(case_c));
  return t.finish();
}

// ---------------------------------------------------------------------------
// Registry and sweeps

struct CheckInfo {
  std::string name;
  Severity severity;
  CheckReport (*run)(Analysis&);
  bool extremal_is_max = false;  // report checks: which end of the ratio is interesting
};

inline const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> checks{
      {"xyz", Severity::theorem, check_xyz},
      {"fishburn", Severity::theorem, check_fishburn},
      {"tsumwin", Severity::theorem, check_tsumwin},
      {"tehs", Severity::theorem, check_tehs},
      {"lsks", Severity::theorem, check_lsks},
      {"logconcavity", Severity::theorem, check_logconcavity},
      {"grunbaum-pairs", Severity::theorem, check_grunbaum_pairs},
      {"efxy", Severity::theorem, check_efxy},
      {"cl1", Severity::theorem, check_cl1},
      {"corner", Severity::theorem, check_corner},
      {"winvar", Severity::theorem, check_winvar},
      {"winh", Severity::theorem, check_winh_bound},
      {"a1-full", Severity::theorem, check_a1_full},
      {"one-third", Severity::conjecture, check_one_third},
      {"a1", Severity::conjecture, check_a1},
      {"winvar-prime", Severity::conjecture, check_winvar_prime},
      {"varf-literal", Severity::conjecture, check_varf_discrete},
      {"increase-h", Severity::conjecture, check_increase_h},
      {"gapw", Severity::report, report_gapw, true},
      {"gaptau", Severity::report, report_gaptau, false},
      {"hdeletex", Severity::report, report_hdeletex, true},
  };
  return checks;
}

inline const CheckInfo& find_check(const std::string& name) {
  for (const auto& c : check_registry())
    if (c.name == name) return c;
  throw InvalidArgument("unknown check '" + name + "'");
}

/// Comma-separated names; "all", "theorems", "conjectures" and "reports"
/// expand to groups. Result keeps registry order without duplicates.
inline std::vector<CheckInfo> resolve_checks(const std::string& list) {
  std::vector<bool> chosen(check_registry().size(), false);
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    bool matched = false;
    for (std::size_t i = 0; i < check_registry().size(); ++i) {
      const auto& c = check_registry()[i];
      const bool hit = item == "all" || item == c.name || (item == "theorems" && c.severity == Severity::theorem) ||
                       (item == "conjectures" && c.severity == Severity::conjecture) ||
                       (item == "reports" && c.severity == Severity::report);
      if (hit) chosen[i] = matched = true;
    }
    if (!matched) throw InvalidArgument("unknown check '" + item + "'");
  }
  std::vector<CheckInfo> out;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (chosen[i]) out.push_back(check_registry()[i]);
  return out;
}

/// Runs one check; cap and availability errors become a skipped report.
inline CheckReport run_check(Analysis& a, const CheckInfo& c) {
  try {
    return c.run(a);
  } catch (const PosetError& e) {
    return skipped_report(c.name, c.severity, a.poset(), e.what());
  }
}

inline std::vector<CheckReport> run_checks(const Poset& p, const std::vector<CheckInfo>& checks,
                                           const VerifyCaps& caps = {}) {
  Analysis a(p, caps);
  std::vector<CheckReport> out;
  out.reserve(checks.size());
  for (const auto& c : checks) out.push_back(run_check(a, c));
  return out;
}

struct SummaryRow {
  std::string check;
  Severity severity = Severity::theorem;
  std::size_t posets = 0;   // posets where the check ran
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::optional<Rational> min_slack;  // pass/fail checks
  std::optional<Rational> extremal;   // report checks
};

struct SweepResult {
  std::vector<CheckReport> reports;  // poset-major, check order within a poset
  std::vector<SummaryRow> summary;

  std::size_t hard_failures() const {
    std::size_t k = 0;
    for (const auto& r : reports) k += r.hard_failure();
    return k;
  }
};

inline std::vector<SummaryRow> summarize(const std::vector<CheckReport>& reports, const std::vector<CheckInfo>& checks) {
  std::vector<SummaryRow> rows;
  std::map<std::string, std::size_t> at;
  for (const auto& c : checks) {
    at[c.name] = rows.size();
    rows.push_back({c.name, c.severity, 0, 0, 0, std::nullopt, std::nullopt});
  }
  for (const auto& r : reports) {
    auto it = at.find(r.check);
    if (it == at.end()) continue;
    auto& row = rows[it->second];
    if (r.status == CheckStatus::skipped) {
      ++row.skipped;
      continue;
    }
    ++row.posets;
    if (r.status == CheckStatus::fail) ++row.failures;
    if (!r.extremal) continue;
    if (r.severity == Severity::report) {
      const bool want_max = find_check(r.check).extremal_is_max;
      if (!row.extremal || (want_max ? *r.extremal > *row.extremal : *r.extremal < *row.extremal))
        row.extremal = r.extremal;
    } else if (!row.min_slack || *r.extremal < *row.min_slack) {
      row.min_slack = r.extremal;
    }
  }
  return rows;
}

/// Runs every check on every poset with `parallelism` workers. Output order
/// follows the input order, so it does not depend on the worker count.
inline SweepResult sweep(const std::vector<Poset>& posets, const std::vector<CheckInfo>& checks,
                         std::size_t parallelism = 1, const VerifyCaps& caps = {}) {
  std::vector<std::vector<CheckReport>> slots(posets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < posets.size();) slots[i] = run_checks(posets[i], checks, caps);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(parallelism, posets.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SweepResult out;
  for (auto& s : slots)
    for (auto& r : s) out.reports.push_back(std::move(r));
  out.summary = summarize(out.reports, checks);
  return out;
}

inline void write_jsonl(std::ostream& out, const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) out << to_json(r).dump() << '\n';
}

inline void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "check            severity    posets  failures  skipped  min-slack/extremal\n";
  for (const auto& r : rows) {
    std::string last = "-";
    if (r.min_slack) last = to_string(*r.min_slack);
    else if (r.extremal) last = to_string(*r.extremal) + " (report)";
    char line[128];
    std::snprintf(line, sizeof line, "%-16s %-11s %6zu  %8zu  %7zu  ", r.check.c_str(), to_string(r.severity),
                  r.posets, r.failures, r.skipped);
    out << line << last << '\n';
  }
}

inline nlohmann::json to_json(const SummaryRow& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["severity"] = to_string(r.severity);
  j["posets"] = r.posets;
  j["failures"] = r.failures;
  j["skipped"] = r.skipped;
  j["min_slack"] = r.min_slack ? nlohmann::json(to_string(*r.min_slack)) : nlohmann::json(nullptr);
  j["extremal"] = r.extremal ? nlohmann::json(to_string(*r.extremal)) : nlohmann::json(nullptr);
  return j;
}

}  // namespace posetbal
