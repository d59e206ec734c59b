#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "posetbal/canonical.hpp"
#include "posetbal/errors.hpp"
#include "posetbal/extensions.hpp"
#include "posetbal/ideal_lattice.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/random.hpp"
#include "posetbal/rational.hpp"
#include "posetbal/sampler.hpp"

namespace posetbal {

inline Poset chain(std::size_t k) {
  if (k == 0) throw InvalidArgument("chain needs k >= 1");
  if (k > kMaxElements) throw SizeCapExceeded("chain longer than 64");
  std::vector<std::uint64_t> up(k, 0);
  for (std::size_t i = 0; i + 1 < k; ++i) up[i] = std::uint64_t{1} << (i + 1);
  return Poset::from_up_masks(std::move(up));
}

inline Poset antichain(std::size_t k) {
  if (k == 0) throw InvalidArgument("antichain needs k >= 1");
  if (k > kMaxElements) throw SizeCapExceeded("antichain larger than 64");
  return Poset::from_up_masks(std::vector<std::uint64_t>(k, 0));
}

/// Parallel sum of chains of lengths 2, 4, ..., 2^t (2^{t+1} - 2 elements).
inline Poset komlos_chains(std::size_t t) {
  if (t == 0) throw InvalidArgument("komlos_chains needs t >= 1");
  if (t > 5) throw SizeCapExceeded("komlos_chains(t) has 2^(t+1)-2 elements; t <= 5");
  Poset p = chain(2);
  for (std::size_t i = 2; i <= t; ++i) p = parallel_sum(p, chain(std::size_t{1} << i));
  return p;
}

/// Chain y_1 < ... < y_m (m = 2^t, elements 0..m-1) plus free elements
/// x_1..x_t (elements m..m+t-1) with the single cover x_i < y_{2^i}.
inline Poset bit_example(std::size_t t) {
  if (t == 0) throw InvalidArgument("bit_example needs t >= 1");
  if (t > 5) throw SizeCapExceeded("bit_example(t) has 2^t + t elements; t <= 5");
  const std::size_t m = std::size_t{1} << t;
  std::vector<Relation> rels;
  for (std::size_t i = 0; i + 1 < m; ++i) rels.emplace_back(i, i + 1);
  for (std::size_t i = 1; i <= t; ++i) rels.emplace_back(m + i - 1, (std::size_t{1} << i) - 1);
  return Poset::from_relations(m + t, rels);
}

// ---------------------------------------------------------------------------
// Construction with an antichain of pairwise badly balanced elements.

enum class Goodness { verified_good, verified_bad, unverified };

inline const char* to_string(Goodness g) {
  switch (g) {
    case Goodness::verified_good: return "verified-good";
    case Goodness::verified_bad: return "verified-bad";
    case Goodness::unverified: return "unverified";
  }
  return "?";
}

struct GoodPair {
  Poset poset;
  ElementSet antichain;
  Goodness goodness = Goodness::unverified;
  std::optional<Rational> max_delta;     // exact, when verified
  std::optional<double> sampled_max_delta;  // flagged estimate otherwise
};

/// max δ_xy over distinct pairs of `a`, exactly; nullopt when the lattice is
/// over the cap.
inline std::optional<Rational> max_pair_delta(const Poset& p, ElementSet a, std::size_t ideal_cap) {
  try {
    IdealLattice lat(p, ideal_cap);
    ExtensionStats s = exact_stats(lat, 0);
    Rational best(0);
    for (Element x : a)
      for (Element y : a)
        if (x < y) best = std::max(best, std::min(s.prec[x][y], s.prec[y][x]));
    return best;
  } catch (const IdealCapExceeded&) {
    return std::nullopt;
  }
}

/// Estimate of max δ_xy on `a` from the adjacent-transposition walk. Only a
/// flag for oversized instances; never used as a verdict.
inline double sampled_max_pair_delta(const Poset& p, ElementSet a, std::uint64_t samples, std::uint64_t seed) {
  const auto xs = a.elements();
  std::vector<std::vector<std::uint64_t>> before(p.size(), std::vector<std::uint64_t>(p.size(), 0));
  const std::uint64_t steps = std::max<std::uint64_t>(1, 4 * p.size() * p.size() * p.size());
  for (std::uint64_t s = 0; s < samples; ++s) {
    auto f = sample_extension_mcmc(p, steps, derive_seed(seed, s)).heights();
    for (Element x : xs)
      for (Element y : xs)
        if (x != y && f[x] < f[y]) ++before[x][y];
  }
  double best = 0;
  for (Element x : xs)
    for (Element y : xs)
      if (x < y) {
        const double pxy = static_cast<double>(before[x][y]) / static_cast<double>(samples);
        best = std::max(best, std::min(pxy, 1.0 - pxy));
      }
  return best;
}

inline constexpr std::size_t kExampleIdealCap = std::size_t{1} << 20;

/// Applies `levels` rounds of (P, I) -> ([P' ⊕ A'] + [A'' ⊕ P''], I' ∪ I''),
/// with A', A'' antichains of size ceil((1+eps)|P|). Goodness (δ_xy <= eps on
/// the antichain) is verified exactly when the lattice fits, else flagged.
inline GoodPair example_11_1(const Rational& eps, std::size_t levels, const Poset& base, ElementSet base_antichain,
                             std::size_t ideal_cap = kExampleIdealCap, std::uint64_t seed = 1) {
  if (eps <= 0) throw InvalidArgument("eps must be positive");
  if (base.size() == 0) throw InvalidArgument("base poset must be non-empty");
  for (Element x : base_antichain) base.check_element(x);
  if (!is_antichain(base, base_antichain)) throw InvalidArgument("base set is not an antichain");
  if (auto d = max_pair_delta(base, base_antichain, ideal_cap); d && *d > eps) {
    throw InvalidArgument("base pair is not good: max delta " + to_string(*d));
  }
  Poset p = base;
  ElementSet a = base_antichain;
  for (std::size_t level = 0; level < levels; ++level) {
    const std::size_t m = p.size();
    Rational want = (1 + eps) * static_cast<unsigned long>(m);
    Count ceil_q;
    mpz_cdiv_q(ceil_q.get_mpz_t(), want.get_num_mpz_t(), want.get_den_mpz_t());
    const std::size_t extra = ceil_q.get_ui();
    if (2 * (m + extra) > kMaxElements) throw SizeCapExceeded("construction would exceed 64 elements");
    Poset left = series_sum(p, antichain(extra));
    Poset right = series_sum(antichain(extra), p);
    ElementSet next;
    for (Element x : a) {
      next.insert(x);
      next.insert(m + 2 * extra + x);
    }
    p = parallel_sum(left, right);
    a = next;
  }
  GoodPair out{p, a, Goodness::unverified, std::nullopt, std::nullopt};
  if (auto d = max_pair_delta(p, a, ideal_cap)) {
    out.max_delta = d;
    out.goodness = *d <= eps ? Goodness::verified_good : Goodness::verified_bad;
  } else {
    out.sampled_max_delta = sampled_max_pair_delta(p, a, 2000, seed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// S = C_k ⊕ (C_r + C_a) ⊕ C_l with x the bottom of C_r.

struct ShiftedChain {
  Poset poset;
  Element x;
};

inline ShiftedChain example_11_2(std::size_t r, std::size_t a, std::size_t k, std::size_t l) {
  if (r < 1 || a < 1 || k < 1 || l < 1) throw InvalidArgument("r, a, k, l must all be >= 1");
  if (k + r + a + l > kMaxElements) throw SizeCapExceeded("k + r + a + l exceeds 64");
  Poset s = series_sum(series_sum(chain(k), parallel_sum(chain(r), chain(a))), chain(l));
  return {s, k};
}

/// h_S(x) = k + (r+a+1)/(r+1).
inline Rational example_11_2_height(std::size_t r, std::size_t a, std::size_t k) {
  return Rational(static_cast<unsigned long>(k)) + make_rational(static_cast<long>(r + a + 1), r + 1);
}

inline Rational example_11_2_H(std::size_t r, std::size_t a, std::size_t k, std::size_t l) {
  return example_11_2_height(r, a, k) / static_cast<unsigned long>(k + r + a + l + 1);
}

/// (k, l) with 1 <= k, l < 3a minimizing |H_S(x) - 1/2|; ties go to the
/// smallest k, then l.
inline std::pair<std::size_t, std::size_t> solve_11_2(std::size_t r, std::size_t a) {
  if (r < 1 || a < 1) throw InvalidArgument("r and a must be >= 1");
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Rational best_err;
  const Rational half = make_rational(1, 2);
  for (std::size_t k = 1; k < 3 * a; ++k) {
    for (std::size_t l = 1; l < 3 * a; ++l) {
      Rational err = abs(example_11_2_H(r, a, k, l) - half);
      if (!best || err < best_err) {
        best = {k, l};
        best_err = err;
      }
    }
  }
  if (!best) throw NoFeasibleKL("no (k, l) with 1 <= k, l < 3a");
  return *best;
}

// ---------------------------------------------------------------------------

/// Random order: a uniformly shuffled vertex order, each forward pair joined
/// independently with probability p, then closed transitively.
inline Poset random_poset(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0,1]");
  if (n > kMaxElements) throw SizeCapExceeded("random posets are limited to 64 elements");
  SplitMix64 rng(seed);
  std::vector<Element> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(static_cast<std::uint64_t>(i))]);
  std::vector<std::uint64_t> up(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform01() < p) up[perm[i]] |= std::uint64_t{1} << perm[j];
  return Poset::from_up_masks(std::move(up));
}

// ---------------------------------------------------------------------------
// Isomorphism-reduced catalog

inline constexpr std::size_t kCatalogMaxElements = 8;

namespace detail {
inline std::vector<Poset> extend_catalog(const std::vector<Poset>& smaller, std::size_t n) {
  std::set<std::string> forms;
  for (const Poset& q : smaller) {
    std::vector<std::uint64_t> base(n, 0);
    for (Element x = 0; x + 1 < n; ++x) base[x] = q.above(x).mask();
    for (std::uint64_t ideal : order_ideal_masks(q)) {
      // New element n-1 placed above the ideal, maximal.
      std::vector<std::uint64_t> up = base;
      for (Element y : ElementSet(ideal)) up[y] |= std::uint64_t{1} << (n - 1);
      forms.insert(canonical_form(Poset::from_up_masks(std::move(up))));
    }
  }
  std::vector<Poset> out;
  out.reserve(forms.size());
  for (const auto& f : forms) out.push_back(from_canonical_form(f));
  return out;
}
}  // namespace detail

/// One poset per isomorphism class of n-element posets, each labelled by its
/// canonical form and listed in canonical-form order. Results are memoized.
inline const std::vector<Poset>& catalog(std::size_t n) {
  if (n > kCatalogMaxElements) throw SizeCapExceeded("catalog limited to n <= 8");
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Poset>> memo;
  std::lock_guard<std::mutex> lock(mu);
  if (memo.empty()) memo.emplace(0, std::vector<Poset>{Poset()});
  for (std::size_t k = 1; k <= n; ++k) {
    if (memo.count(k)) continue;
    memo.emplace(k, detail::extend_catalog(memo.at(k - 1), k));
  }
  return memo.at(n);
}

/// catalog(lo) ++ ... ++ catalog(hi).
inline std::vector<Poset> catalog_range(std::size_t lo, std::size_t hi) {
  std::vector<Poset> out;
  for (std::size_t k = lo; k <= hi; ++k) {
    const auto& c = catalog(k);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace posetbal
