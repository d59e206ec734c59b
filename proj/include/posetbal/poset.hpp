#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posetbal/element_set.hpp"
#include "posetbal/errors.hpp"

namespace posetbal {

using Relation = std::pair<Element, Element>;

/// A finite poset on {0, ..., n-1}, n <= 64.
///
/// The strict order is stored twice, as a down-mask and an up-mask per
/// element, together with the cover relation. Instances are immutable; every
/// structural operation returns a new poset.
class Poset {
 public:
  Poset() = default;

  /// Transitive closure of `pairs` (each (low, high) meaning low < high).
  /// Pairs need not be covers. Throws IndexError for out-of-range elements and
  /// CycleError if the relation has a directed cycle.
  static Poset from_relations(std::size_t n, std::span<const Relation> pairs) {
    if (n > kMaxElements) throw SizeCapExceeded("posets are limited to 64 elements");
    std::vector<std::uint64_t> up(n, 0);
    for (auto [lo, hi] : pairs) {
      if (lo >= n || hi >= n) {
        throw IndexError("relation (" + std::to_string(lo) + "," + std::to_string(hi) +
                         ") out of range for n=" + std::to_string(n));
      }
      if (lo == hi) throw CycleError("element " + std::to_string(lo) + " related to itself");
      up[lo] |= std::uint64_t{1} << hi;
    }
    return from_up_masks(std::move(up));
  }

  static Poset from_relations(std::size_t n, std::initializer_list<Relation> pairs) {
    return from_relations(n, std::span<const Relation>(pairs.begin(), pairs.size()));
  }

  /// `up[x]` holds any set of elements required to lie above x; the closure is
  /// taken here.
  static Poset from_up_masks(std::vector<std::uint64_t> up) {
    const std::size_t n = up.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      for (std::size_t i = 0; i < n; ++i) {
        if (up[i] & bit) up[i] |= up[k];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if ((up[i] >> i) & 1U) throw CycleError("relation has a directed cycle through element " + std::to_string(i));
    }
    Poset p;
    p.n_ = n;
    p.up_ = std::move(up);
    p.down_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for (Element y : ElementSet(p.up_[x])) p.down_[y] |= std::uint64_t{1} << x;
    }
    p.upper_cover_.assign(n, 0);
    p.lower_cover_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for (Element y : ElementSet(p.up_[x])) {
        if ((p.up_[x] & p.down_[y]) == 0) {
          p.upper_cover_[x] |= std::uint64_t{1} << y;
          p.lower_cover_[y] |= std::uint64_t{1} << x;
        }
      }
    }
    return p;
  }

  std::size_t size() const { return n_; }
  ElementSet all() const { return ElementSet::full(n_); }

  bool less(Element x, Element y) const { return (up_[x] >> y) & 1U; }
  bool comparable(Element x, Element y) const { return less(x, y) || less(y, x); }
  /// True iff y covers x.
  bool covered_by(Element x, Element y) const { return (upper_cover_[x] >> y) & 1U; }

  ElementSet below(Element x) const { return ElementSet(down_[x]); }
  ElementSet above(Element x) const { return ElementSet(up_[x]); }
  ElementSet lower_covers(Element x) const { return ElementSet(lower_cover_[x]); }
  ElementSet upper_covers(Element x) const { return ElementSet(upper_cover_[x]); }
  ElementSet incomparable(Element x) const { return all() - below(x) - above(x) - ElementSet::singleton(x); }

  std::size_t relation_count() const {
    std::size_t c = 0;
    for (auto m : up_) c += ElementSet(m).size();
    return c;
  }

  std::vector<Relation> relations() const {
    std::vector<Relation> out;
    for (Element x = 0; x < n_; ++x)
      for (Element y : above(x)) out.emplace_back(x, y);
    return out;
  }

  std::vector<Relation> cover_relations() const {
    std::vector<Relation> out;
    for (Element x = 0; x < n_; ++x)
      for (Element y : upper_covers(x)) out.emplace_back(x, y);
    return out;
  }

  void check_element(Element x) const {
    if (x >= n_) throw IndexError("element " + std::to_string(x) + " out of range for n=" + std::to_string(n_));
  }

  bool operator==(const Poset& other) const { return n_ == other.n_ && up_ == other.up_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
  std::vector<std::uint64_t> upper_cover_;
  std::vector<std::uint64_t> lower_cover_;
};

// ---------------------------------------------------------------------------
// Structural operations

inline Poset dual(const Poset& p) {
  std::vector<std::uint64_t> up(p.size());
  for (Element x = 0; x < p.size(); ++x) up[x] = p.below(x).mask();
  return Poset::from_up_masks(std::move(up));
}

/// Induced subposet on `keep`, relabelled 0.. in increasing original index.
inline Poset induced(const Poset& p, ElementSet keep) {
  std::vector<Element> kept = keep.elements();
  std::vector<std::size_t> index(p.size(), 0);
  for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = i;
  std::vector<std::uint64_t> up(kept.size(), 0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (Element y : p.above(kept[i]) & keep) up[i] |= std::uint64_t{1} << index[y];
  }
  return Poset::from_up_masks(std::move(up));
}

inline Poset delete_element(const Poset& p, Element x) {
  p.check_element(x);
  return induced(p, p.all().without(x));
}

/// Smallest order containing p and x < y.
inline Poset add_relation(const Poset& p, Element x, Element y) {
  p.check_element(x);
  p.check_element(y);
  if (x == y) throw InconsistentRelation("cannot relate an element to itself");
  if (p.less(y, x)) {
    throw InconsistentRelation(std::to_string(y) + " < " + std::to_string(x) + " already holds");
  }
  if (p.less(x, y)) return p;
  std::vector<std::uint64_t> up(p.size());
  for (Element z = 0; z < p.size(); ++z) up[z] = p.above(z).mask();
  const std::uint64_t lifted = p.above(y).with(y).mask();
  for (Element z : p.below(x).with(x)) up[z] |= lifted;
  return Poset::from_up_masks(std::move(up));
}

/// Adds every relation in `pairs`; throws InconsistentRelation when the result
/// would not be an order.
inline Poset add_relations(const Poset& p, std::span<const Relation> pairs) {
  Poset q = p;
  for (auto [x, y] : pairs) q = add_relation(q, x, y);
  return q;
}

namespace detail {
inline Poset disjoint_sum(const Poset& p, const Poset& q, bool series) {
  const std::size_t np = p.size();
  const std::size_t n = np + q.size();
  if (n > kMaxElements) throw SizeCapExceeded("sum exceeds 64 elements");
  std::vector<std::uint64_t> up(n, 0);
  const std::uint64_t q_block = ElementSet::full(n).mask() & ~ElementSet::full(np).mask();
  for (Element x = 0; x < np; ++x) up[x] = p.above(x).mask() | (series ? q_block : 0);
  for (Element x = 0; x < q.size(); ++x) up[np + x] = q.above(x).mask() << np;
  return Poset::from_up_masks(std::move(up));
}
}  // namespace detail

/// P ⊕ Q: every element of p below every element of q. q is relabelled after p.
inline Poset series_sum(const Poset& p, const Poset& q) { return detail::disjoint_sum(p, q, true); }

/// P + Q: disjoint union with no cross relations.
inline Poset parallel_sum(const Poset& p, const Poset& q) { return detail::disjoint_sum(p, q, false); }

inline ElementSet min_set(const Poset& p) {
  ElementSet out;
  for (Element x = 0; x < p.size(); ++x)
    if (p.below(x).empty()) out.insert(x);
  return out;
}

inline ElementSet max_set(const Poset& p) {
  ElementSet out;
  for (Element x = 0; x < p.size(); ++x)
    if (p.above(x).empty()) out.insert(x);
  return out;
}

/// Maximal elements of a subset (elements of s with nothing of s above them).
inline ElementSet maximal_in(const Poset& p, ElementSet s) {
  ElementSet out;
  for (Element x : s)
    if (!p.above(x).intersects(s)) out.insert(x);
  return out;
}

inline ElementSet minimal_in(const Poset& p, ElementSet s) {
  ElementSet out;
  for (Element x : s)
    if (!p.below(x).intersects(s)) out.insert(x);
  return out;
}

/// |{y : y <= x}|, counting x.
inline std::size_t alpha(const Poset& p, Element x) {
  p.check_element(x);
  return p.below(x).size() + 1;
}

/// |{y : y >= x}|, counting x.
inline std::size_t beta(const Poset& p, Element x) {
  p.check_element(x);
  return p.above(x).size() + 1;
}

/// Number of elements incomparable to x.
inline std::size_t pi(const Poset& p, Element x) {
  p.check_element(x);
  return p.incomparable(x).size();
}

inline ElementSet ideal_closure(const Poset& p, ElementSet s) {
  ElementSet out = s;
  for (Element x : s) out |= p.below(x);
  return out;
}

inline ElementSet filter_closure(const Poset& p, ElementSet s) {
  ElementSet out = s;
  for (Element x : s) out |= p.above(x);
  return out;
}

inline bool is_ideal(const Poset& p, ElementSet s) { return ideal_closure(p, s) == s; }
inline bool is_filter(const Poset& p, ElementSet s) { return filter_closure(p, s) == s; }

inline bool is_antichain(const Poset& p, ElementSet s) {
  for (Element x : s)
    if (p.above(x).intersects(s)) return false;
  return true;
}

inline bool is_chain(const Poset& p, ElementSet s) {
  for (Element x : s)
    if (p.incomparable(x).intersects(s)) return false;
  return true;
}

inline bool is_chain(const Poset& p) { return is_chain(p, p.all()); }

/// Elements sorted so that x < y implies x comes first.
inline std::vector<Element> topological_order(const Poset& p) {
  std::vector<Element> order(p.size());
  for (Element x = 0; x < p.size(); ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return p.below(a).size() < p.below(b).size(); });
  return order;
}

/// Length of a longest chain.
inline std::size_t height(const Poset& p) {
  std::vector<std::size_t> longest(p.size(), 1);
  std::size_t best = 0;
  for (Element x : topological_order(p)) {
    for (Element y : p.lower_covers(x)) longest[x] = std::max(longest[x], longest[y] + 1);
    best = std::max(best, longest[x]);
  }
  return best;
}

/// Height levels: level[x] is the number of elements on a longest chain
/// ending at x, minus one. The levels partition p into antichains.
inline std::vector<ElementSet> height_levels(const Poset& p) {
  std::vector<std::size_t> level(p.size(), 0);
  std::size_t top = 0;
  for (Element x : topological_order(p)) {
    for (Element y : p.lower_covers(x)) level[x] = std::max(level[x], level[y] + 1);
    top = std::max(top, level[x] + 1);
  }
  std::vector<ElementSet> out(top);
  for (Element x = 0; x < p.size(); ++x) out[level[x]].insert(x);
  return out;
}

/// One longest chain, listed bottom to top.
inline std::vector<Element> longest_chain(const Poset& p) {
  if (p.size() == 0) return {};
  std::vector<std::size_t> longest(p.size(), 1);
  std::vector<Element> prev(p.size(), p.size());
  for (Element x : topological_order(p)) {
    for (Element y : p.lower_covers(x)) {
      if (longest[y] + 1 > longest[x] || (longest[y] + 1 == longest[x] && y < prev[x])) {
        longest[x] = longest[y] + 1;
        prev[x] = y;
      }
    }
  }
  Element top = 0;
  for (Element x = 1; x < p.size(); ++x)
    if (longest[x] > longest[top]) top = x;
  std::vector<Element> chain;
  for (Element x = top; x != p.size(); x = prev[x]) chain.push_back(x);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

namespace detail {

// Maximum matching in the comparability split: left copy of x joined to the
// right copy of y whenever x < y.
struct ChainCoverMatching {
  std::vector<std::size_t> match_left;   // right partner of each left vertex, or n
  std::vector<std::size_t> match_right;  // left partner of each right vertex, or n
  std::size_t size = 0;
};

inline bool augment(const Poset& p, Element x, std::vector<char>& seen, ChainCoverMatching& m) {
  for (Element y : p.above(x)) {
    if (seen[y]) continue;
    seen[y] = 1;
    if (m.match_right[y] == p.size() || augment(p, m.match_right[y], seen, m)) {
      m.match_left[x] = y;
      m.match_right[y] = x;
      return true;
    }
  }
  return false;
}

inline ChainCoverMatching chain_cover_matching(const Poset& p) {
  const std::size_t n = p.size();
  ChainCoverMatching m{std::vector<std::size_t>(n, n), std::vector<std::size_t>(n, n), 0};
  for (Element x = 0; x < n; ++x) {
    std::vector<char> seen(n, 0);
    if (augment(p, x, seen, m)) ++m.size;
  }
  return m;
}

}  // namespace detail

/// Size of a largest antichain, computed as n minus a maximum matching
/// (Dilworth via König).
inline std::size_t width(const Poset& p) { return p.size() - detail::chain_cover_matching(p).size; }

/// A maximum antichain, recovered from a minimum vertex cover of the
/// comparability split.
inline ElementSet max_antichain(const Poset& p) {
  const std::size_t n = p.size();
  auto m = detail::chain_cover_matching(p);
  // Alternating search from unmatched left vertices.
  std::vector<char> left_reached(n, 0), right_reached(n, 0);
  std::vector<Element> stack;
  for (Element x = 0; x < n; ++x) {
    if (m.match_left[x] == n) {
      left_reached[x] = 1;
      stack.push_back(x);
    }
  }
  while (!stack.empty()) {
    Element x = stack.back();
    stack.pop_back();
    for (Element y : p.above(x)) {
      if (right_reached[y] || m.match_left[x] == y) continue;
      right_reached[y] = 1;
      Element back = m.match_right[y];
      if (back != n && !left_reached[back]) {
        left_reached[back] = 1;
        stack.push_back(back);
      }
    }
  }
  ElementSet out;
  for (Element x = 0; x < n; ++x)
    if (left_reached[x] && !right_reached[x]) out.insert(x);
  return out;
}

/// Partition into width(p) chains (each listed bottom to top).
inline std::vector<std::vector<Element>> min_chain_cover(const Poset& p) {
  const std::size_t n = p.size();
  auto m = detail::chain_cover_matching(p);
  std::vector<std::vector<Element>> chains;
  for (Element x = 0; x < n; ++x) {
    if (m.match_right[x] != n) continue;  // not a chain start
    std::vector<Element> chain;
    for (Element z = x; z != n; z = m.match_left[z]) chain.push_back(z);
    chains.push_back(std::move(chain));
  }
  return chains;
}

inline constexpr std::size_t kAntichainEnumLimit = 24;

/// Calls `visit` on every antichain of size <= size_cap (the empty one
/// included), each exactly once.
inline void for_each_antichain(const Poset& p, std::size_t size_cap, const std::function<void(ElementSet)>& visit) {
  if (p.size() > kAntichainEnumLimit) {
    throw SizeCapExceeded("antichain enumeration limited to n <= " + std::to_string(kAntichainEnumLimit));
  }
  std::function<void(Element, ElementSet, ElementSet)> rec = [&](Element next, ElementSet chosen, ElementSet blocked) {
    visit(chosen);
    if (chosen.size() >= size_cap) return;
    for (Element x = next; x < p.size(); ++x) {
      if (blocked.contains(x)) continue;
      rec(x + 1, chosen.with(x), blocked | p.below(x) | p.above(x));
    }
  };
  rec(0, ElementSet{}, ElementSet{});
}

inline std::vector<ElementSet> antichains(const Poset& p, std::size_t size_cap = kMaxElements) {
  std::vector<ElementSet> out;
  for_each_antichain(p, size_cap, [&](ElementSet a) { out.push_back(a); });
  return out;
}

}  // namespace posetbal
