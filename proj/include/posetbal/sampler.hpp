#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "json.hpp"

#include "posetbal/errors.hpp"
#include "posetbal/extensions.hpp"
#include "posetbal/ideal_lattice.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/random.hpp"

namespace posetbal {

inline constexpr double kPolytopeTolerance = 1e-12;
inline constexpr std::uint64_t kMinEstimateSamples = 100;

/// Mean of a sampled statistic with its standard error (sample standard
/// deviation over sqrt(samples)).
struct Estimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  /// |mean - target| <= k * std_error.
  bool agrees_with(double target, double k = 3.0) const { return std::abs(mean - target) <= k * std_error; }
};

inline nlohmann::json to_json(const Estimate& e) {
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

/// Point of [0,1]^n indexed by element.
struct PolytopePoint {
  std::vector<double> coords;
};

/// Exactly uniform linear extensions, drawn top-down through the ideal
/// lattice: from ideal I the next (topmost remaining) element is a maximal x
/// of I, chosen with probability down(I - x) / down(I).
///
/// The lattice must outlive the sampler.
class ExtensionSampler {
 public:
  ExtensionSampler(const IdealLattice& lattice, std::uint64_t seed) : lattice_(&lattice), rng_(seed) {
    // Exact 64-bit fast path whenever every count fits.
    small_ = lattice.extension_count().fits_ulong_p();
    if (small_) {
      small_down_.resize(lattice.size());
      for (std::size_t i = 0; i < lattice.size(); ++i) small_down_[i] = lattice.down(i).get_ui();
    }
  }

  LinearExtension operator()() {
    const IdealLattice& lat = *lattice_;
    const std::size_t n = lat.poset().size();
    LinearExtension ext;
    ext.order.resize(n);
    std::size_t cur = lat.size() - 1;
    for (std::size_t pos = n; pos-- > 0;) {
      const ElementSet in = lat.ideal(cur);
      Element chosen = n;
      std::size_t next = cur;
      if (small_) {
        std::uint64_t r = rng_.below(small_down_[cur]);
        for (Element x : lat.removable(cur)) {
          const std::size_t j = lat.at(in.without(x));
          if (r < small_down_[j]) {
            chosen = x;
            next = j;
            break;
          }
          r -= small_down_[j];
        }
      } else {
        Count r = rng_.below(lat.down(cur));
        for (Element x : lat.removable(cur)) {
          const std::size_t j = lat.at(in.without(x));
          if (r < lat.down(j)) {
            chosen = x;
            next = j;
            break;
          }
          r -= lat.down(j);
        }
      }
      ext.order[pos] = chosen;
      cur = next;
    }
    return ext;
  }

  SplitMix64& rng() { return rng_; }

 private:
  const IdealLattice* lattice_;
  SplitMix64 rng_;
  bool small_ = false;
  std::vector<std::uint64_t> small_down_;
};

inline LinearExtension sample_extension_exact(const IdealLattice& lattice, std::uint64_t seed) {
  return ExtensionSampler(lattice, seed)();
}

/// Adjacent-transposition walk started at the lexicographically first
/// extension. Each step picks one of the n-1 adjacent position pairs uniformly
/// and swaps it when the result is still an extension; otherwise it holds.
/// Not used by any correctness check (no mixing guarantee).
inline LinearExtension sample_extension_mcmc(const Poset& p, std::uint64_t steps, std::uint64_t seed) {
  if (steps < 1) throw InvalidArgument("MCMC needs at least one step");
  const std::size_t n = p.size();
  LinearExtension ext;
  ElementSet placed;
  while (ext.order.size() < n) {
    for (Element x : p.all() - placed) {
      if (p.below(x).is_subset_of(placed)) {
        ext.order.push_back(x);
        placed.insert(x);
        break;
      }
    }
  }
  if (n < 2) return ext;
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.below(static_cast<std::uint64_t>(n - 1));
    if (!p.less(ext.order[i], ext.order[i + 1])) std::swap(ext.order[i], ext.order[i + 1]);
  }
  return ext;
}

/// Uniform points of the order polytope: a uniform extension picks the
/// simplex, sorted uniforms pick the point inside it.
class OrderPolytopeSampler {
 public:
  OrderPolytopeSampler(const IdealLattice& lattice, std::uint64_t seed) : extensions_(lattice, seed) {}

  PolytopePoint operator()() {
    LinearExtension ext = extensions_();
    return point_in_simplex(ext);
  }

  /// Draws the simplex point for an already drawn extension.
  PolytopePoint point_in_simplex(const LinearExtension& ext) {
    const std::size_t n = ext.order.size();
    std::vector<double> u(n);
    for (auto& v : u) v = extensions_.rng().uniform01();
    std::sort(u.begin(), u.end());
    PolytopePoint pt{std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) pt.coords[ext.order[k]] = u[k];
    return pt;
  }

  LinearExtension next_extension() { return extensions_(); }

 private:
  ExtensionSampler extensions_;
};

inline PolytopePoint sample_order_polytope_point(const IdealLattice& lattice, std::uint64_t seed) {
  return OrderPolytopeSampler(lattice, seed)();
}

inline bool in_order_polytope(const Poset& p, const PolytopePoint& pt, double tol = kPolytopeTolerance) {
  if (pt.coords.size() != p.size()) return false;
  for (Element x = 0; x < p.size(); ++x) {
    if (pt.coords[x] < -tol || pt.coords[x] > 1 + tol) return false;
    for (Element y : p.above(x))
      if (pt.coords[x] > pt.coords[y] + tol) return false;
  }
  return true;
}

/// Largest sum of coordinates along a chain (the chain polytope constraint).
inline double max_chain_sum(const Poset& p, const PolytopePoint& pt) {
  std::vector<double> best(p.size(), 0.0);
  double top = 0;
  for (Element x : topological_order(p)) {
    double below = 0;
    for (Element y : p.below(x)) below = std::max(below, best[y]);
    best[x] = below + pt.coords[x];
    top = std::max(top, best[x]);
  }
  return top;
}

inline bool in_chain_polytope(const Poset& p, const PolytopePoint& pt, double tol = kPolytopeTolerance) {
  if (pt.coords.size() != p.size()) return false;
  for (double c : pt.coords)
    if (c < -tol || c > 1 + tol) return false;
  return max_chain_sum(p, pt) <= 1 + tol;
}

/// Stanley's transfer map O(P) -> C(P): F*(x) = F(x) - Q(x), Q(x) the
/// largest coordinate strictly below x (0 for minimal x).
inline PolytopePoint transfer_map(const Poset& p, const PolytopePoint& pt) {
  if (!in_order_polytope(p, pt)) throw DomainError("point is not in the order polytope");
  PolytopePoint out{pt.coords};
  for (Element x = 0; x < p.size(); ++x) {
    double q = 0;
    for (Element y : p.below(x)) q = std::max(q, pt.coords[y]);
    out.coords[x] = pt.coords[x] - q;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Estimates

namespace detail {
struct Welford {
  std::uint64_t count = 0;
  double mean = 0;
  double m2 = 0;
  void add(double v) {
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
  }
  Estimate finish(std::uint64_t seed) const {
    const double var = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(count)), count, seed};
  }
};

inline void check_samples(std::uint64_t samples) {
  if (samples < kMinEstimateSamples) throw InvalidArgument("estimates need at least 100 samples");
}
}  // namespace detail

template <typename Statistic>
Estimate estimate_extension_statistic(const IdealLattice& lattice, Statistic&& stat, std::uint64_t samples,
                                      std::uint64_t seed) {
  detail::check_samples(samples);
  ExtensionSampler draw(lattice, seed);
  detail::Welford acc;
  for (std::uint64_t i = 0; i < samples; ++i) acc.add(static_cast<double>(stat(draw())));
  return acc.finish(seed);
}

template <typename Statistic>
Estimate estimate_point_statistic(const IdealLattice& lattice, Statistic&& stat, std::uint64_t samples,
                                  std::uint64_t seed) {
  detail::check_samples(samples);
  OrderPolytopeSampler draw(lattice, seed);
  detail::Welford acc;
  for (std::uint64_t i = 0; i < samples; ++i) acc.add(static_cast<double>(stat(draw())));
  return acc.finish(seed);
}

inline Estimate estimate_extension_event(const Poset& p, const std::function<bool(const LinearExtension&)>& event,
                                         std::uint64_t samples, std::uint64_t seed,
                                         std::size_t ideal_cap = kDefaultIdealCap) {
  IdealLattice lat(p, ideal_cap);
  return estimate_extension_statistic(lat, [&](const LinearExtension& e) { return event(e) ? 1.0 : 0.0; }, samples,
                                      seed);
}

inline Estimate estimate_point_event(const Poset& p, const std::function<bool(const PolytopePoint&)>& event,
                                     std::uint64_t samples, std::uint64_t seed,
                                     std::size_t ideal_cap = kDefaultIdealCap) {
  IdealLattice lat(p, ideal_cap);
  return estimate_point_statistic(lat, [&](const PolytopePoint& pt) { return event(pt) ? 1.0 : 0.0; }, samples,
                                  seed);
}

/// r(x) - q(x) for one extension, with q = 0 / r = n+1 at the boundary.
inline std::size_t window_length(const Poset& p, const std::vector<std::size_t>& heights, Element x) {
  std::size_t q = 0, r = p.size() + 1;
  for (Element y : p.below(x)) q = std::max(q, heights[y]);
  for (Element y : p.above(x)) r = std::min(r, heights[y]);
  return r - q;
}

inline Estimate estimate_win(const Poset& p, Element x, std::uint64_t samples, std::uint64_t seed,
                             std::size_t ideal_cap = kDefaultIdealCap) {
  p.check_element(x);
  IdealLattice lat(p, ideal_cap);
  return estimate_extension_statistic(
      lat, [&](const LinearExtension& e) { return static_cast<double>(window_length(p, e.heights(), x)); }, samples,
      seed);
}

/// Rejection estimate of |C(P)|: fraction of uniform cube points inside the
/// chain polytope. Only for n <= 5, where the hit rate stays usable.
inline Estimate estimate_chain_polytope_volume(const Poset& p, std::uint64_t samples, std::uint64_t seed) {
  if (p.size() > 5) throw SizeCapExceeded("rejection volume estimate limited to n <= 5");
  detail::check_samples(samples);
  SplitMix64 rng(seed);
  detail::Welford acc;
  PolytopePoint pt{std::vector<double>(p.size())};
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (auto& c : pt.coords) c = rng.uniform01();
    acc.add(max_chain_sum(p, pt) <= 1.0 ? 1.0 : 0.0);
  }
  return acc.finish(seed);
}

}  // namespace posetbal
