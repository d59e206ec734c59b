#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "posetbal/errors.hpp"
#include "posetbal/extensions.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/rational.hpp"

namespace posetbal {

struct BalanceOptions {
  std::size_t ideal_cap = kDefaultIdealCap;
  std::uint64_t enum_cap = kDefaultEnumCap;
  std::size_t tau_subset_cap = 5;  // largest |X| examined for τ
  std::size_t tau_max_n = 10;      // τ is skipped above this size
};

struct TauResult {
  double value = 0;          // max over examined X of H(σ|X) / |X|, in bits
  ElementSet witness;
  bool truncated = false;    // some X ⊆ P were not examined
};

struct BalanceReport {
  std::size_t n = 0;
  Rational delta;
  std::optional<std::pair<Element, Element>> delta_pair;
  std::vector<Rational> delta_x;
  RationalMatrix deltamatrix;
  Rational gap;
  std::optional<TauResult> tau;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t piP = 0;
  Rational sigma2P;  // max σ²(x)
  double sigmaP = 0;
  std::optional<Rational> winP;
};

/// δ_xy = min(Pr(x ≺ y), Pr(y ≺ x)); zero on the diagonal.
inline RationalMatrix delta_matrix(const ExtensionStats& s) {
  RationalMatrix d(s.n, std::vector<Rational>(s.n, Rational(0)));
  for (Element x = 0; x < s.n; ++x)
    for (Element y = 0; y < s.n; ++y)
      if (x != y) d[x][y] = std::min(s.prec[x][y], s.prec[y][x]);
  return d;
}

/// max{h(x1), h(x2)-h(x1), ..., n+1-h(xn)} over the heights sorted ascending.
inline Rational height_gap(std::vector<Rational> h) {
  const auto n1 = static_cast<unsigned long>(h.size() + 1);
  if (h.empty()) return Rational(n1);
  std::sort(h.begin(), h.end());
  Rational g = h.front();
  for (std::size_t i = 1; i < h.size(); ++i) g = std::max(g, Rational(h[i] - h[i - 1]));
  return std::max(g, Rational(n1 - h.back()));
}

namespace detail {

/// Number of extensions realizing `sequence` as a relative order (0 if it
/// contradicts p).
inline Count order_count(const Poset& p, std::span<const Element> sequence, std::size_t ideal_cap) {
  Poset q = p;
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    if (q.less(sequence[i + 1], sequence[i])) return Count(0);
    q = add_relation(q, sequence[i], sequence[i + 1]);
  }
  return count_extensions(q, ideal_cap);
}

inline double entropy_bits(const std::vector<Count>& counts, const Count& total) {
  double h = 0;
  for (const auto& c : counts) {
    if (c == 0) continue;
    const double pr = ratio(c, total).get_d();
    h -= pr * std::log2(pr);
  }
  return h;
}

inline void for_each_subset_up_to(std::size_t n, std::size_t cap, const std::function<void(std::vector<Element>&)>& fn) {
  std::vector<Element> cur;
  std::function<void(Element)> rec = [&](Element next) {
    if (!cur.empty()) fn(cur);
    if (cur.size() == cap) return;
    for (Element x = next; x < n; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Lehmer rank of the relative order of `xs` under heights f.
inline std::size_t pattern_index(const std::vector<Element>& xs, const std::vector<std::size_t>& f) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (f[xs[j]] < f[xs[i]]) ++smaller;
    idx = idx * (xs.size() - i) + smaller;
  }
  return idx;
}

inline std::size_t small_factorial(std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Entropy (bits) of the random relative order of X.
inline double restricted_order_entropy(const Poset& p, const std::vector<Element>& xs, const Count& e,
                                       std::size_t ideal_cap = kDefaultIdealCap) {
  if (xs.size() < 2) return 0;
  std::vector<Element> perm = xs;
  std::sort(perm.begin(), perm.end());
  std::vector<Count> counts;
  do {
    counts.push_back(detail::order_count(p, perm, ideal_cap));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return detail::entropy_bits(counts, e);
}

/// τ restricted to |X| <= options.tau_subset_cap. Uses one enumeration pass
/// when that is cheap, else per-order counting.
inline std::optional<TauResult> tau_parameter(const Poset& p, const Count& e, const BalanceOptions& opt) {
  const std::size_t n = p.size();
  if (n > opt.tau_max_n) return std::nullopt;
  TauResult best;
  best.truncated = opt.tau_subset_cap < n;
  std::vector<std::vector<Element>> subsets;
  detail::for_each_subset_up_to(n, opt.tau_subset_cap, [&](std::vector<Element>& xs) {
    if (xs.size() >= 2) subsets.push_back(xs);
  });
  auto consider = [&](const std::vector<Element>& xs, double h) {
    const double v = h / static_cast<double>(xs.size());
    ElementSet w;
    for (Element x : xs) w.insert(x);
    if (v > best.value + 1e-12) {
      best.value = v;
      best.witness = w;
    }
  };
  const double work = e.get_d() * static_cast<double>(subsets.size());
  if (work <= 5e7) {
    std::vector<std::vector<Count>> counts(subsets.size());
    std::vector<std::vector<std::uint64_t>> raw(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) raw[i].assign(detail::small_factorial(subsets[i].size()), 0);
    std::vector<std::size_t> f(n);
    for_each_extension(p, [&](std::span<const Element> order) {
      for (std::size_t i = 0; i < n; ++i) f[order[i]] = i + 1;
      for (std::size_t i = 0; i < subsets.size(); ++i) ++raw[i][detail::pattern_index(subsets[i], f)];
    });
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      std::vector<Count> c;
      for (auto v : raw[i]) c.push_back(count_of(v));
      consider(subsets[i], detail::entropy_bits(c, e));
    }
  } else {
    for (const auto& xs : subsets) consider(xs, restricted_order_entropy(p, xs, e, opt.ideal_cap));
  }
  if (best.witness.empty() && n > 0) best.witness = ElementSet::singleton(0);
  return best;
}

inline BalanceReport balance_report(const Poset& p, const ExtensionStats& s, const BalanceOptions& opt = {}) {
  const std::size_t n = p.size();
  BalanceReport b;
  b.n = n;
  b.deltamatrix = delta_matrix(s);
  b.delta = 0;
  b.delta_x.assign(n, Rational(0));
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (x == y) continue;
      b.delta_x[x] = std::max(b.delta_x[x], b.deltamatrix[x][y]);
      if (y > x && (!b.delta_pair || b.deltamatrix[x][y] > b.delta)) {
        b.delta = b.deltamatrix[x][y];
        b.delta_pair = std::make_pair(x, y);
      }
    }
  }
  b.gap = height_gap(s.h);
  b.tau = tau_parameter(p, s.e, opt);
  b.width = width(p);
  b.height = height(p);
  b.sigma2P = 0;
  for (Element x = 0; x < n; ++x) {
    b.piP = std::max(b.piP, pi(p, x));
    b.sigma2P = std::max(b.sigma2P, s.sigma2[x]);
  }
  b.sigmaP = std::sqrt(b.sigma2P.get_d());
  if (s.win && n > 0) b.winP = *std::max_element(s.win->begin(), s.win->end());
  return b;
}

inline BalanceReport balance_report(const Poset& p, const BalanceOptions& opt = {}) {
  return balance_report(p, exact_stats(p, opt.enum_cap, opt.ideal_cap), opt);
}

inline nlohmann::json to_json(const BalanceReport& b) {
  nlohmann::json j;
  j["delta"] = to_string(b.delta);
  j["delta_pair"] = b.delta_pair ? nlohmann::json::array({b.delta_pair->first, b.delta_pair->second})
                                 : nlohmann::json(nullptr);
  j["delta_x"] = rationals_to_json(b.delta_x);
  j["deltamatrix"] = rationals_to_json(b.deltamatrix);
  j["gap"] = to_string(b.gap);
  if (b.tau) {
    j["tau"] = {{"value", b.tau->value}, {"witness", b.tau->witness.elements()}, {"truncated", b.tau->truncated}};
  } else {
    j["tau"] = nullptr;
  }
  j["width"] = b.width;
  j["height"] = b.height;
  j["piP"] = b.piP;
  j["sigma2P"] = to_string(b.sigma2P);
  j["sigmaP"] = b.sigmaP;
  j["winP"] = b.winP ? nlohmann::json(to_string(*b.winP)) : nlohmann::json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------

struct DeltaK {
  Rational value;
  std::vector<Element> witness;
};

inline constexpr std::uint64_t kDefaultDeltaKBudget = 2'000'000;

/// δ_k(X): the best k-subset Y of X by the smallest probability among the k!
/// relative orders of Y.
inline DeltaK delta_k(const Poset& p, ElementSet xs, std::size_t k, std::uint64_t budget = kDefaultDeltaKBudget,
                      std::size_t ideal_cap = kDefaultIdealCap) {
  for (Element x : xs) p.check_element(x);
  if (k < 1 || k > xs.size()) throw InvalidArgument("delta_k needs 1 <= k <= |X|");
  // evaluations = C(|X|, k) * k!
  Count evals(1);
  for (std::size_t i = 0; i < k; ++i) evals *= static_cast<unsigned long>(xs.size() - i);
  if (evals > count_of(budget)) throw BudgetExceeded("delta_k needs " + evals.get_str() + " order evaluations");

  const Count e = count_extensions(p, ideal_cap);
  const std::vector<Element> pool = xs.elements();
  DeltaK best{Rational(-1), {}};
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<Element> ys(k);
    for (std::size_t i = 0; i < k; ++i) ys[i] = pool[pick[i]];
    Rational worst(1);
    std::vector<Element> perm = ys;
    do {
      Rational pr = k == 1 ? Rational(1) : ratio(detail::order_count(p, perm, ideal_cap), e);
      worst = std::min(worst, pr);
      if (worst <= best.value) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (worst > best.value) best = {worst, ys};
    // next combination
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

inline void require_chain(const Poset& p, std::span<const Element> chain) {
  for (Element y : chain) p.check_element(y);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!p.less(chain[i], chain[i + 1])) {
      throw NotAChain("elements " + std::to_string(chain[i]) + " and " + std::to_string(chain[i + 1]) +
                      " are not increasing in the order");
    }
  }
}

/// Gap of a chain y1 < ... < ym: max{h(y1), h(y2)-h(y1), ..., n+1-h(ym)}.
inline Rational gap_chain(const Poset& p, std::span<const Element> chain, const ExtensionStats& s) {
  require_chain(p, chain);
  const auto n1 = static_cast<unsigned long>(p.size() + 1);
  if (chain.empty()) return Rational(n1);
  Rational g = s.h[chain.front()];
  for (std::size_t i = 1; i < chain.size(); ++i) g = std::max(g, Rational(s.h[chain[i]] - s.h[chain[i - 1]]));
  return std::max(g, Rational(n1 - s.h[chain.back()]));
}

inline Rational gap_chain(const Poset& p, std::span<const Element> chain) {
  require_chain(p, chain);
  return gap_chain(p, chain, exact_stats(p, 0));
}

struct DiffuseResult {
  bool diffuse = false;
  Rational max_cell;
  std::vector<Rational> cells;  // Pr(x ≺ y1), Pr(y1 ≺ x ≺ y2), ..., Pr(x ≻ ym)
};

inline DiffuseResult is_diffuse(const Poset& p, Element x, std::span<const Element> chain, const Rational& eps,
                                std::size_t ideal_cap = kDefaultIdealCap) {
  p.check_element(x);
  require_chain(p, chain);
  if (std::find(chain.begin(), chain.end(), x) != chain.end()) throw InvalidArgument("x must not lie on the chain");
  DiffuseResult r;
  const Count e = count_extensions(p, ideal_cap);
  if (chain.empty()) {
    r.cells.push_back(Rational(1));
  } else {
    const std::vector<Element> first{x, chain.front()};
    r.cells.push_back(ratio(detail::order_count(p, first, ideal_cap), e));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const std::vector<Element> mid{chain[i], x, chain[i + 1]};
      r.cells.push_back(ratio(detail::order_count(p, mid, ideal_cap), e));
    }
    const std::vector<Element> last{chain.back(), x};
    r.cells.push_back(ratio(detail::order_count(p, last, ideal_cap), e));
  }
  r.max_cell = *std::max_element(r.cells.begin(), r.cells.end());
  r.diffuse = r.max_cell < eps;
  return r;
}

/// Weights on antichains with per-element load at most 1.
struct FractionalMatching {
  std::vector<std::pair<ElementSet, Rational>> weights;
};

struct FractionalMatchingValue {
  Rational weighted_square_sum;                 // Σ λ_A |A|²
  std::optional<Rational> weighted_win_sum;     // Σ λ_A Σ_{x∈A} win(x)
  std::optional<Rational> win_total;            // Σ_x win(x)
};

inline void validate_matching(const Poset& p, const FractionalMatching& m) {
  std::vector<Rational> load(p.size(), Rational(0));
  for (const auto& [a, w] : m.weights) {
    if (a.empty()) throw InvalidArgument("fractional matching weights an empty set");
    for (Element x : a) p.check_element(x);
    if (w < 0 || w > 1) throw InvalidMatching("weight " + to_string(w) + " outside [0,1]", *a.begin());
    for (Element x : a) {
      if (p.above(x).intersects(a)) throw InvalidMatching("weighted set is not an antichain", x);
      load[x] += w;
    }
  }
  for (Element x = 0; x < p.size(); ++x) {
    if (load[x] > 1) throw InvalidMatching("element " + std::to_string(x) + " has load " + to_string(load[x]), x);
  }
}

inline FractionalMatchingValue evaluate_fractional_matching(const Poset& p, const FractionalMatching& m,
                                                            const std::optional<std::vector<Rational>>& win = {}) {
  validate_matching(p, m);
  FractionalMatchingValue v;
  v.weighted_square_sum = 0;
  for (const auto& [a, w] : m.weights) v.weighted_square_sum += w * static_cast<unsigned long>(a.size() * a.size());
  if (win) {
    Rational inner(0), total(0);
    for (const auto& [a, w] : m.weights)
      for (Element x : a) inner += w * (*win)[x];
    for (const auto& q : *win) total += q;
    v.weighted_win_sum = inner;
    v.win_total = total;
  }
  return v;
}

/// Height levels, each with weight 1.
inline FractionalMatching level_matching(const Poset& p) {
  FractionalMatching m;
  for (ElementSet level : height_levels(p)) m.weights.emplace_back(level, Rational(1));
  return m;
}

}  // namespace posetbal
