#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "posetbal/errors.hpp"
#include "posetbal/ideal_lattice.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/rational.hpp"

namespace posetbal {

inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

/// A linear extension as an element sequence, bottom first. The height of
/// x (the bijection view f) is its position plus one.
struct LinearExtension {
  std::vector<Element> order;

  std::vector<std::size_t> heights() const {
    std::vector<std::size_t> f(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) f[order[i]] = i + 1;
    return f;
  }
  bool operator==(const LinearExtension&) const = default;
};

inline bool is_linear_extension(const Poset& p, std::span<const Element> order) {
  if (order.size() != p.size()) return false;
  ElementSet placed;
  for (Element x : order) {
    if (x >= p.size() || placed.contains(x) || !p.below(x).is_subset_of(placed)) return false;
    placed.insert(x);
  }
  return true;
}

/// Visits every linear extension exactly once, in lexicographic order of the
/// element sequence. The span passed to `visit` is only valid during the call.
template <typename Visitor>
void for_each_extension(const Poset& p, Visitor&& visit) {
  const std::size_t n = p.size();
  std::vector<Element> order(n);
  auto rec = [&](auto&& self, std::size_t depth, ElementSet placed) -> void {
    if (depth == n) {
      visit(std::span<const Element>(order));
      return;
    }
    for (Element x : p.all() - placed) {
      if (!p.below(x).is_subset_of(placed)) continue;
      order[depth] = x;
      self(self, depth + 1, placed.with(x));
    }
  };
  rec(rec, 0, ElementSet{});
}

inline Count count_extensions(const Poset& p, std::size_t ideal_cap = kDefaultIdealCap) {
  return IdealLattice(p, ideal_cap).extension_count();
}

/// All extensions, lexicographic. Throws EnumCapExceeded when e(P) > cap.
inline std::vector<LinearExtension> enumerate_extensions(const Poset& p, std::uint64_t cap = kDefaultEnumCap,
                                                         std::size_t ideal_cap = kDefaultIdealCap) {
  if (count_extensions(p, ideal_cap) > count_of(cap)) {
    throw EnumCapExceeded("e(P) exceeds the enumeration cap " + std::to_string(cap));
  }
  std::vector<LinearExtension> out;
  for_each_extension(p, [&](std::span<const Element> s) { out.push_back({{s.begin(), s.end()}}); });
  return out;
}

/// Pr(f(x) = k) for k = 1..n (entry k-1), from the lattice.
inline std::vector<Rational> rank_distribution(const IdealLattice& lat, Element x) {
  const Poset& p = lat.poset();
  p.check_element(x);
  const std::size_t n = p.size();
  std::vector<Count> hits(n, Count(0));
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const ElementSet in = lat.ideal(i);
    if (in.contains(x) || !p.below(x).is_subset_of(in)) continue;
    hits[in.size()] += lat.down(i) * lat.up(lat.at(in.with(x)));
  }
  std::vector<Rational> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = ratio(hits[k], lat.extension_count());
  return out;
}

inline std::vector<Rational> rank_distribution(const Poset& p, Element x, std::size_t ideal_cap = kDefaultIdealCap) {
  p.check_element(x);
  return rank_distribution(IdealLattice(p, ideal_cap), x);
}

/// Pr(x precedes y) = e(P + x<y) / e(P).
inline Rational precedence_probability(const Poset& p, Element x, Element y, std::size_t ideal_cap = kDefaultIdealCap) {
  p.check_element(x);
  p.check_element(y);
  if (x == y) throw InvalidArgument("precedence probability needs distinct elements");
  if (p.less(x, y)) return Rational(1);
  if (p.less(y, x)) return Rational(0);
  return ratio(count_extensions(add_relation(p, x, y), ideal_cap), count_extensions(p, ideal_cap));
}

/// Probability that the listed elements appear in exactly this relative
/// order; 0 when the order contradicts P.
inline Rational order_probability(const Poset& p, std::span<const Element> sequence,
                                  std::size_t ideal_cap = kDefaultIdealCap) {
  if (sequence.size() < 2 || sequence.size() > p.size()) {
    throw InvalidArgument("order probability needs between 2 and n elements");
  }
  ElementSet seen;
  for (Element x : sequence) {
    p.check_element(x);
    if (seen.contains(x)) throw InvalidArgument("order probability needs distinct elements");
    seen.insert(x);
  }
  Poset q = p;
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    if (q.less(sequence[i + 1], sequence[i])) return Rational(0);
    q = add_relation(q, sequence[i], sequence[i + 1]);
  }
  return ratio(count_extensions(q, ideal_cap), count_extensions(p, ideal_cap));
}

inline Rational order_probability(const Poset& p, std::initializer_list<Element> sequence,
                                  std::size_t ideal_cap = kDefaultIdealCap) {
  return order_probability(p, std::span<const Element>(sequence.begin(), sequence.size()), ideal_cap);
}

/// Exact statistics of the uniform linear extension.
///
/// Lattice-derived fields are always present. `win`, `eabsdiff` and
/// `difference_dist` need a full enumeration and are empty when e(P) exceeds
/// the enumeration cap.
struct ExtensionStats {
  std::size_t n = 0;
  Count e;
  std::vector<Rational> h;                    // E f(x)
  std::vector<std::vector<Rational>> rank_dist;  // rank_dist[x][k-1] = Pr(f(x) = k)
  RationalMatrix prec;                        // prec[x][y] = Pr(x precedes y); diagonal 0
  std::vector<Rational> sigma2;               // Var f(x)
  std::optional<std::vector<Rational>> win;   // E[r(x) - q(x)]
  std::optional<RationalMatrix> eabsdiff;     // E|f(x) - f(y)|
  // difference_dist[x][y][k] = Pr(f(y) - f(x) = k), k = 0..n-1 (entry 0 unused)
  std::optional<std::vector<std::vector<std::vector<Rational>>>> difference_dist;

  bool has_enumeration() const { return win.has_value(); }
};

inline ExtensionStats exact_stats(const IdealLattice& lat, std::uint64_t enum_cap = kDefaultEnumCap) {
  const Poset& p = lat.poset();
  const std::size_t n = p.size();
  ExtensionStats s;
  s.n = n;
  s.e = lat.extension_count();

  // One pass over (ideal, addable y): the extensions that add y right after
  // ideal I are counted by down(I) * up(I + y).
  std::vector<std::vector<Count>> rank_hits(n, std::vector<Count>(n, Count(0)));
  std::vector<std::vector<Count>> before(n, std::vector<Count>(n, Count(0)));
  Count w;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const ElementSet in = lat.ideal(i);
    for (Element y : lat.addable(i)) {
      w = lat.down(i) * lat.up(lat.at(in.with(y)));
      rank_hits[y][in.size()] += w;
      for (Element x : in) before[x][y] += w;
    }
  }
  s.rank_dist.assign(n, std::vector<Rational>(n));
  s.h.assign(n, Rational(0));
  s.sigma2.assign(n, Rational(0));
  for (Element x = 0; x < n; ++x) {
    Rational second(0);
    for (std::size_t k = 0; k < n; ++k) {
      s.rank_dist[x][k] = ratio(rank_hits[x][k], s.e);
      s.h[x] += s.rank_dist[x][k] * static_cast<unsigned long>(k + 1);
      second += s.rank_dist[x][k] * static_cast<unsigned long>((k + 1) * (k + 1));
    }
    s.sigma2[x] = second - s.h[x] * s.h[x];
  }
  s.prec.assign(n, std::vector<Rational>(n, Rational(0)));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (x != y) s.prec[x][y] = ratio(before[x][y], s.e);

  if (s.e > count_of(enum_cap)) return s;

  std::vector<std::uint64_t> win_sum(n, 0);
  std::vector<std::vector<std::uint64_t>> absdiff(n, std::vector<std::uint64_t>(n, 0));
  std::vector<std::vector<std::vector<std::uint64_t>>> diff(
      n, std::vector<std::vector<std::uint64_t>>(n, std::vector<std::uint64_t>(n, 0)));
  std::vector<std::size_t> f(n);
  for_each_extension(p, [&](std::span<const Element> order) {
    for (std::size_t i = 0; i < n; ++i) f[order[i]] = i + 1;
    for (Element x = 0; x < n; ++x) {
      std::size_t q = 0, r = n + 1;
      for (Element y : p.below(x)) q = std::max(q, f[y]);
      for (Element y : p.above(x)) r = std::min(r, f[y]);
      win_sum[x] += r - q;
      for (Element y = 0; y < n; ++y) {
        if (y == x) continue;
        if (f[y] > f[x]) {
          diff[x][y][f[y] - f[x]] += 1;
          absdiff[x][y] += f[y] - f[x];
        } else {
          absdiff[x][y] += f[x] - f[y];
        }
      }
    }
  });
  std::vector<Rational> win(n);
  RationalMatrix eabs(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::vector<std::vector<Rational>>> dd(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  for (Element x = 0; x < n; ++x) {
    win[x] = ratio(count_of(win_sum[x]), s.e);
    for (Element y = 0; y < n; ++y) {
      if (x == y) continue;
      eabs[x][y] = ratio(count_of(absdiff[x][y]), s.e);
      for (std::size_t k = 1; k < n; ++k) dd[x][y][k] = ratio(count_of(diff[x][y][k]), s.e);
    }
  }
  s.win = std::move(win);
  s.eabsdiff = std::move(eabs);
  s.difference_dist = std::move(dd);
  return s;
}

inline ExtensionStats exact_stats(const Poset& p, std::uint64_t enum_cap = kDefaultEnumCap,
                                  std::size_t ideal_cap = kDefaultIdealCap) {
  return exact_stats(IdealLattice(p, ideal_cap), enum_cap);
}

// ---------------------------------------------------------------------------
// JSON (rationals as "p/q" strings)

inline nlohmann::json rationals_to_json(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline nlohmann::json rationals_to_json(const RationalMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : m) out.push_back(rationals_to_json(row));
  return out;
}

inline nlohmann::json to_json(const ExtensionStats& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["e"] = to_string(s.e);
  j["h"] = rationals_to_json(s.h);
  j["rank_dist"] = rationals_to_json(s.rank_dist);
  j["prec"] = rationals_to_json(s.prec);
  j["sigma2"] = rationals_to_json(s.sigma2);
  j["win"] = s.win ? rationals_to_json(*s.win) : nlohmann::json(nullptr);
  j["eabsdiff"] = s.eabsdiff ? rationals_to_json(*s.eabsdiff) : nlohmann::json(nullptr);
  return j;
}

}  // namespace posetbal
