#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plasmic/bits.hpp"
#include "plasmic/errors.hpp"

namespace plasmic {

/// A basepoint-preserving function ⟨n⟩ → ⟨m⟩, where ⟨n⟩ = {0, 1, ..., n}.
class PointedMap {
 public:
  /// `image` has length n+1, image[0] = 0 and every entry is at most m.
  PointedMap(int n, int m, std::vector<Index> image);

  static PointedMap identity(int n);

  int source() const noexcept { return n_; }
  int target() const noexcept { return m_; }
  const std::vector<Index>& image() const noexcept { return image_; }
  Index operator()(Index i) const { return image_.at(i); }

  /// Position in enumerate_pointed_maps(n, m): the image vector read as a
  /// base-(m+1) number, most significant digit first.
  std::uint64_t rank() const noexcept;
  static PointedMap unrank(int n, int m, std::uint64_t rank);

  /// "n->m:[0,a1,...,an]".
  std::string to_string() const;
  static PointedMap parse(std::string_view text);

  friend bool operator==(const PointedMap&, const PointedMap&) = default;

 private:
  int n_;
  int m_;
  std::vector<Index> image_;
};

/// g after f.
PointedMap compose(const PointedMap& g, const PointedMap& f);

/// (m+1)^n, throwing BudgetExceeded past the budget.
std::uint64_t pointed_map_count(int n, int m, Budget budget = {});

/// All maps ⟨n⟩ → ⟨m⟩ in lexicographic order of the image vector.
std::vector<PointedMap> enumerate_pointed_maps(int n, int m, Budget budget = {});

/// {i ∈ [n] : φ(i) ∈ T}. Subsets of [k] keep element j at bit j-1.
Subset preimage(const PointedMap& phi, Subset t);

// Named maps.

/// ⟨n⟩ → ⟨1⟩ sending i to 1 and everything else to 0.
PointedMap rho(int n, int i);
/// ⟨n⟩ → ⟨1⟩ with preimage of 1 equal to S.
PointedMap rho_subset(int n, Subset s);
/// ⟨n⟩ → ⟨2⟩ with S ↦ 1, T ↦ 2 and the rest to 0. S and T must be disjoint.
PointedMap rho_pair(int n, Subset s, Subset t);
/// ⟨2⟩ → ⟨1⟩, both 1 and 2 to 1.
PointedMap alpha();
/// ⟨1⟩ → ⟨2⟩, 1 ↦ 1.
PointedMap i1();
/// ⟨1⟩ → ⟨2⟩, 1 ↦ 2.
PointedMap i2();
/// ⟨2⟩ → ⟨2⟩ swapping 1 and 2.
PointedMap tau();
/// ⟨0⟩ → ⟨1⟩.
PointedMap unit_map();
/// ⟨1⟩ → ⟨0⟩.
PointedMap zeta();

}  // namespace plasmic
