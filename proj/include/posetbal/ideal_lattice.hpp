#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "posetbal/errors.hpp"
#include "posetbal/poset.hpp"
#include "posetbal/rational.hpp"

namespace posetbal {

inline constexpr std::size_t kDefaultIdealCap = std::size_t{1} << 20;

/// All order ideals, by increasing size then increasing mask.
inline std::vector<std::uint64_t> order_ideal_masks(const Poset& p, std::size_t cap = kDefaultIdealCap) {
  std::vector<std::uint64_t> out{0};
  std::vector<std::uint64_t> level{0};
  while (!level.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t mask : level) {
      const ElementSet in(mask);
      for (Element x : p.all() - in)
        if (p.below(x).is_subset_of(in)) next.push_back(in.with(x).mask());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (out.size() + next.size() > cap) throw IdealCapExceeded("more than " + std::to_string(cap) + " order ideals");
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

/// All order ideals of a poset together with two extension-count tables:
///
///   down(I) = e(P restricted to I)      (down(I) = sum over x in max(I) of down(I - x))
///   up(I)   = e(P restricted to P - I)  (up(I)   = sum over x in min(P - I) of up(I + x))
///
/// so down(P) = up(∅) = e(P). Ideals are stored by increasing size, then
/// increasing mask.
class IdealLattice {
 public:
  explicit IdealLattice(const Poset& p, std::size_t ideal_cap = kDefaultIdealCap) : poset_(p) {
    build_ideals(ideal_cap);
    fill_counts();
  }

  const Poset& poset() const { return poset_; }
  std::size_t size() const { return ideals_.size(); }
  ElementSet ideal(std::size_t i) const { return ElementSet(ideals_[i]); }
  const Count& down(std::size_t i) const { return down_[i]; }
  const Count& up(std::size_t i) const { return up_[i]; }
  const Count& extension_count() const { return up_.front(); }

  std::optional<std::size_t> index_of(ElementSet s) const {
    auto it = index_.find(s.mask());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t at(ElementSet s) const { return index_.at(s.mask()); }

  /// Elements that can be added to ideal i keeping it an ideal.
  ElementSet addable(std::size_t i) const {
    const ElementSet in(ideals_[i]);
    ElementSet out;
    for (Element x : poset_.all() - in)
      if (poset_.below(x).is_subset_of(in)) out.insert(x);
    return out;
  }

  /// Elements that can be removed from ideal i keeping it an ideal, i.e. max(I).
  ElementSet removable(std::size_t i) const { return maximal_in(poset_, ElementSet(ideals_[i])); }

 private:
  void build_ideals(std::size_t cap) {
    ideals_ = order_ideal_masks(poset_, cap);
    index_.reserve(ideals_.size());
    for (std::size_t i = 0; i < ideals_.size(); ++i) index_.emplace(ideals_[i], i);
  }

  void fill_counts() {
    const std::size_t m = ideals_.size();
    down_.assign(m, Count(0));
    up_.assign(m, Count(0));
    down_[0] = 1;
    for (std::size_t i = 1; i < m; ++i) {
      const ElementSet in(ideals_[i]);
      for (Element x : removable(i)) down_[i] += down_[index_.at(in.without(x).mask())];
    }
    up_[m - 1] = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      const ElementSet in(ideals_[i]);
      for (Element x : addable(i)) up_[i] += up_[index_.at(in.with(x).mask())];
    }
  }

  Poset poset_;
  std::vector<std::uint64_t> ideals_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Count> down_;
  std::vector<Count> up_;
};

/// Alias kept for symmetry with the other module entry points.
inline IdealLattice build_lattice(const Poset& p, std::size_t ideal_cap = kDefaultIdealCap) {
  return IdealLattice(p, ideal_cap);
}

}  // namespace posetbal
