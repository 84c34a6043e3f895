#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace plasmic {

/// A set of small indices packed into one machine word. Bit i stands for
/// index i; for subsets of [n] = {1..n} element k is stored at bit k-1.
using Subset = std::uint64_t;

/// Position of an element inside a finite carrier or pointed set.
using Index = std::uint32_t;

inline constexpr std::size_t kMaxCarrier = 63;

constexpr Subset singleton(std::size_t i) { return Subset{1} << i; }

constexpr bool contains(Subset s, std::size_t i) { return ((s >> i) & 1u) != 0; }

constexpr int cardinality(Subset s) { return std::popcount(s); }

constexpr bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }

/// All indices 0..count-1.
constexpr Subset full_set(std::size_t count) {
  return count >= 64 ? ~Subset{0} : singleton(count) - 1;
}

constexpr int highest_element(Subset s) { return 63 - std::countl_zero(s); }

template <class F>
void for_each_element(Subset s, F&& f) {
  while (s != 0) {
    f(static_cast<Index>(std::countr_zero(s)));
    s &= s - 1;
  }
}

/// Nonempty subsets of an n-element set ordered by (cardinality, value).
std::vector<Subset> subsets_by_cardinality(int n);

/// Position of every subset of an n-element set inside
/// subsets_by_cardinality(n); the empty set gets position 0 and the rest are
/// shifted by one.
std::vector<int> cardinality_positions(int n);

/// "{a,b,c}" using the given element names.
std::string format_subset(Subset s, std::span<const std::string> labels);

/// FNV-1a, 64 bit. Used for stable input digests in reports.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace plasmic
