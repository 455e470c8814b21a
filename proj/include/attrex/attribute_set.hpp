#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace attrex {

/// Maximum number of attributes a schema may declare.
inline constexpr std::size_t kMaxAttributes = 64;

/// A subset of the attribute universe, stored as one 64-bit word.
///
/// Bit i stands for the attribute with index i. The ordering operator is the
/// lectic order: two sets are compared at their largest differing index, and
/// the set containing that index is the larger one. With this bit layout the
/// lectic order is plain numeric order of the word.
class AttributeSet {
 public:
  constexpr AttributeSet() = default;
  constexpr explicit AttributeSet(std::uint64_t bits) : bits_(bits) {}
  AttributeSet(std::initializer_list<std::size_t> members) {
    for (auto m : members) insert(m);
  }

  static constexpr AttributeSet full(std::size_t size) {
    return AttributeSet(size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1);
  }
  static constexpr AttributeSet singleton(std::size_t i) { return AttributeSet(std::uint64_t{1} << i); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t i) const { return i < 64 && ((bits_ >> i) & 1U) != 0; }

  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr bool subset_of(AttributeSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(AttributeSet other) const { return subset_of(other) && bits_ != other.bits_; }

  /// Index of the largest member, or -1 for the empty set.
  constexpr int highest() const { return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_); }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  constexpr AttributeSet& operator|=(AttributeSet o) { bits_ |= o.bits_; return *this; }
  constexpr AttributeSet& operator&=(AttributeSet o) { bits_ &= o.bits_; return *this; }
  constexpr AttributeSet& operator-=(AttributeSet o) { bits_ &= ~o.bits_; return *this; }

  friend constexpr AttributeSet operator|(AttributeSet a, AttributeSet b) { return a |= b; }
  friend constexpr AttributeSet operator&(AttributeSet a, AttributeSet b) { return a &= b; }
  friend constexpr AttributeSet operator-(AttributeSet a, AttributeSet b) { return a -= b; }

  friend constexpr bool operator==(AttributeSet, AttributeSet) = default;
  friend constexpr std::strong_ordering operator<=>(AttributeSet a, AttributeSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

/// All subsets of `universe`, in lectic order.
template <typename Fn>
void for_each_subset(AttributeSet universe, Fn&& fn) {
  const std::uint64_t u = universe.bits();
  std::uint64_t s = 0;
  while (true) {
    fn(AttributeSet(s));
    if (s == u) break;
    s = (s - u) & u;
  }
}

}  // namespace attrex

template <>
struct std::hash<attrex::AttributeSet> {
  std::size_t operator()(attrex::AttributeSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
