#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace posetbal {

using Element = std::size_t;

inline constexpr std::size_t kMaxElements = 64;

/// Subset of the ground set {0, ..., n-1}, stored as a 64-bit mask.
class ElementSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    using pointer = const Element*;
    using reference = Element;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr Element operator*() const { return static_cast<Element>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t mask) : mask_(mask) {}
  ElementSet(std::initializer_list<Element> elements) {
    for (Element x : elements) insert(x);
  }

  static constexpr ElementSet full(std::size_t n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr ElementSet singleton(Element x) { return ElementSet(std::uint64_t{1} << x); }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool contains(Element x) const { return (mask_ >> x) & 1U; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr void insert(Element x) { mask_ |= std::uint64_t{1} << x; }
  constexpr void erase(Element x) { mask_ &= ~(std::uint64_t{1} << x); }
  constexpr bool is_subset_of(ElementSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(ElementSet other) const { return (mask_ & other.mask_) != 0; }

  constexpr ElementSet with(Element x) const { return ElementSet(mask_ | (std::uint64_t{1} << x)); }
  constexpr ElementSet without(Element x) const { return ElementSet(mask_ & ~(std::uint64_t{1} << x)); }

  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<Element> elements() const { return {begin(), end()}; }

  friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.mask_ | b.mask_); }
  friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.mask_ & b.mask_); }
  friend constexpr ElementSet operator-(ElementSet a, ElementSet b) { return ElementSet(a.mask_ & ~b.mask_); }
  constexpr ElementSet& operator|=(ElementSet b) {
    mask_ |= b.mask_;
    return *this;
  }
  constexpr ElementSet& operator&=(ElementSet b) {
    mask_ &= b.mask_;
    return *this;
  }
  constexpr ElementSet& operator-=(ElementSet b) {
    mask_ &= ~b.mask_;
    return *this;
  }
  constexpr auto operator<=>(const ElementSet&) const = default;

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (Element x : *this) {
      if (!first) out += ",";
      out += std::to_string(x);
      first = false;
    }
    return out + "}";
  }

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace posetbal
