#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "posetbal/errors.hpp"
#include "posetbal/poset.hpp"

namespace posetbal {

inline constexpr std::size_t kCanonicalMaxElements = 10;

struct CanonicalLabeling {
  std::string form;
  std::vector<Element> order;  // order[i] is the original element placed at position i
};

namespace detail {

inline std::string matrix_string(const Poset& p, const std::vector<Element>& order) {
  const std::size_t n = p.size();
  std::string out(n * n, '0');
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.less(order[i], order[j])) out[i * n + j] = '1';
  return out;
}

// Colour refinement seeded with (alpha, beta, cover degree). The resulting
// colours depend only on the isomorphism type, so ordering cells by colour is
// label independent.
inline std::vector<std::size_t> refined_colours(const Poset& p) {
  const std::size_t n = p.size();
  using Seed = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::vector<Seed> seeds(n);
  for (Element x = 0; x < n; ++x) {
    seeds[x] = {p.below(x).size(), p.above(x).size(), p.lower_covers(x).size() + p.upper_covers(x).size()};
  }
  std::vector<Seed> distinct = seeds;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> colour(n);
  for (Element x = 0; x < n; ++x)
    colour[x] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), seeds[x]) - distinct.begin());
  std::size_t classes = distinct.size();

  using Signature = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
  while (true) {
    std::vector<Signature> sig(n);
    for (Element x = 0; x < n; ++x) {
      std::vector<std::size_t> lo, hi;
      for (Element y : p.below(x)) lo.push_back(colour[y]);
      for (Element y : p.above(x)) hi.push_back(colour[y]);
      std::sort(lo.begin(), lo.end());
      std::sort(hi.begin(), hi.end());
      sig[x] = {colour[x], std::move(lo), std::move(hi)};
    }
    std::vector<Signature> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (Element x = 0; x < n; ++x)
      colour[x] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), sig[x]) - uniq.begin());
    if (uniq.size() == classes) break;
    classes = uniq.size();
  }
  return colour;
}

}  // namespace detail

/// Lexicographically smallest row-major strict-order matrix over all
/// relabellings that respect the refined colour classes. Two posets get the
/// same form iff they are isomorphic.
inline CanonicalLabeling canonical_labeling(const Poset& p) {
  const std::size_t n = p.size();
  if (n > kCanonicalMaxElements) {
    throw SizeCapExceeded("canonical form limited to n <= " + std::to_string(kCanonicalMaxElements));
  }
  const auto colour = detail::refined_colours(p);
  std::size_t classes = 0;
  for (auto c : colour) classes = std::max(classes, c + 1);
  std::vector<std::vector<Element>> cells(classes);
  for (Element x = 0; x < n; ++x) cells[colour[x]].push_back(x);

  std::vector<Element> order;
  order.reserve(n);
  std::string best;
  std::vector<Element> best_order;
  bool have_best = false;

  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (cell == cells.size()) {
      std::string m = detail::matrix_string(p, order);
      if (!have_best || m < best) {
        have_best = true;
        best = std::move(m);
        best_order = order;
      }
      return;
    }
    auto members = cells[cell];
    std::sort(members.begin(), members.end());
    do {
      order.insert(order.end(), members.begin(), members.end());
      self(self, cell + 1);
      order.resize(order.size() - members.size());
    } while (std::next_permutation(members.begin(), members.end()));
  };
  rec(rec, 0);
  return {std::to_string(n) + ":" + best, best_order};
}

inline std::string canonical_form(const Poset& p) { return canonical_labeling(p).form; }

/// Inverse of canonical_form: the poset whose strict-order matrix is the
/// encoded one.
inline Poset from_canonical_form(const std::string& form) {
  auto colon = form.find(':');
  if (colon == std::string::npos) throw ParseError("canonical form lacks ':'", 1);
  std::size_t n = 0;
  try {
    n = std::stoul(form.substr(0, colon));
  } catch (const std::exception&) {
    throw ParseError("canonical form has a bad element count", 1);
  }
  const std::string bits = form.substr(colon + 1);
  if (n > kMaxElements || bits.size() != n * n) throw ParseError("canonical form has the wrong length", 1);
  std::vector<std::uint64_t> up(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      char c = bits[i * n + j];
      if (c == '1') up[i] |= std::uint64_t{1} << j;
      else if (c != '0') throw ParseError("canonical form must be 0/1", 1);
    }
  }
  Poset q = Poset::from_up_masks(up);
  for (std::size_t i = 0; i < n; ++i)
    if (q.above(i).mask() != up[i]) throw ParseError("canonical form is not transitively closed", 1);
  return q;
}

/// The isomorphic copy of p labelled in canonical order.
inline Poset canonical_poset(const Poset& p) { return from_canonical_form(canonical_form(p)); }

}  // namespace posetbal
