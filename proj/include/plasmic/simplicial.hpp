#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "plasmic/errors.hpp"
#include "plasmic/finstar.hpp"
#include "plasmic/module.hpp"
#include "plasmic/plasma.hpp"

namespace plasmic {

/// An order-preserving map [m] → [n].
class DeltaMap {
 public:
  DeltaMap(int m, int n, std::vector<int> values);

  /// [n-1] → [n] missing k, 0 ≤ k ≤ n.
  static DeltaMap coface(int n, int k);
  /// [n+1] → [n] identifying k and k+1, 0 ≤ k ≤ n.
  static DeltaMap codegeneracy(int n, int k);
  static DeltaMap identity(int n);

  int source() const noexcept { return m_; }
  int target() const noexcept { return n_; }
  const std::vector<int>& values() const noexcept { return values_; }
  int operator()(int j) const { return values_.at(static_cast<std::size_t>(j)); }

  friend bool operator==(const DeltaMap&, const DeltaMap&) = default;

 private:
  int m_;
  int n_;
  std::vector<int> values_;
};

/// ψ after φ.
DeltaMap compose(const DeltaMap& psi, const DeltaMap& phi);

/// Every order-preserving map [m] → [n].
std::vector<DeltaMap> enumerate_delta_maps(int m, int n);

/// For φ: [m] → [n], the pointed map ⟨n⟩ → ⟨m⟩ sending i to min K_i where
/// K_i = {j : i ≤ φ(j)}, or to 0 when K_i is empty or contains 0.
PointedMap beta(const DeltaMap& phi);

/// Closed form of beta(coface(n, k)): ⟨n⟩ → ⟨n-1⟩. For k < n it fixes
/// i ≤ k and lowers i > k by one; for k = n it sends n to 0.
PointedMap beta_face(int n, int k);

/// Closed form of beta(codegeneracy(n-1, k)): ⟨n-1⟩ → ⟨n⟩ for 0 ≤ k ≤ n-1,
/// fixing i ≤ k and raising i > k by one, so k+1 is skipped.
PointedMap beta_degen(int n, int k);

/// Levels 0..N with face maps d_i (levels ≥ 1) and degeneracies s_i
/// (levels < N). Index 0 of every level is the basepoint.
struct TruncatedSimplicialSet {
  std::string name;
  std::vector<std::vector<std::string>> simplices;
  /// faces[n][i][x] = d_i x for x in level n, 0 ≤ i ≤ n; faces[0] is empty.
  std::vector<std::vector<std::vector<Index>>> faces;
  /// degeneracies[n][i][x] = s_i x for x in level n, 0 ≤ i ≤ n; empty at N.
  std::vector<std::vector<std::vector<Index>>> degeneracies;

  int truncation() const noexcept { return static_cast<int>(simplices.size()) - 1; }
  std::size_t size(int n) const { return simplices.at(static_cast<std::size_t>(n)).size(); }
  Index face(int n, int i, Index x) const;
  Index degeneracy(int n, int i, Index x) const;
};

/// Precomposition with beta: d_i = X(beta_face(n, i)), s_i = X(beta_degen(n+1, i)).
TruncatedSimplicialSet underlying_simplicial(const TabulatedModule& x);

/// All simplicial identities among the maps present at levels ≤ N.
CheckResult check_simplicial_identities(const TruncatedSimplicialSet& s);

/// One face-map square of the 2-Segal condition.
struct SegalSquare {
  int n = 0;
  int i = 0;
  /// 1: (d_0, d_{i+1}) into pairs with d_i b = d_0 a.
  /// 2: (d_{n+1}, d_i) into pairs with d_i b = d_n a.
  int kind = 0;
  std::size_t pullback_size = 0;
  std::size_t top_size = 0;
  bool bijective = false;
};

struct TwoSegalReport {
  bool ok = true;
  std::vector<SegalSquare> squares;
  std::string witness;
};

/// Both squares for every 0 < i < n with n+1 ≤ N.
TwoSegalReport two_segal_check(const TruncatedSimplicialSet& s);

/// The iterated pullback (Z × M) ×_{M×M} Z where Z = level 2 of the nerve
/// of `m`, viewed as a span M×M ← Z → M.
struct SpanPullback {
  std::size_t middle_size = 0;
  /// Each apex element as (z, k, z') with π₃ z = π₁ z' and k = π₂ z'.
  std::vector<std::tuple<Index, Index, Index>> apex;
  /// Distinct (a, b, k) reached by projecting the apex.
  std::size_t covered_triples = 0;
  /// Triples (a, b, k) whose iterated sum (a ⊞ b) ⊞ k is nonempty.
  std::size_t inhabited_triples = 0;
  /// Pairs ((a, b, k), s) with s ∈ (a ⊞ b) ⊞ k.
  std::size_t triple_sum_records = 0;
};

SpanPullback span_pullback(const Plasma& m);
/// span_pullback(krasner()).apex.size().
std::size_t span_pullback_count();

/// BM_n = tuples with a defined total sum; outer faces drop an end, inner
/// faces add neighbours, degeneracies insert the unit.
TruncatedSimplicialSet partial_monoid_classifying(const Plasma& m, int N);

/// `level_maps[n]` is a bijection from level n of `a` to level n of `b`
/// commuting with every face and degeneracy.
CheckResult check_simplicial_isomorphism(const TruncatedSimplicialSet& a,
                                         const TruncatedSimplicialSet& b,
                                         const std::vector<std::vector<Index>>& level_maps);

/// Nerve tuples to their singleton coordinates, matched against
/// partial_monoid_classifying(m, N).
std::vector<std::vector<Index>> nerve_to_classifying(const Plasma& m, int N, Budget budget = {});

/// Pairs of 1-simplices (f, g) with d_0 f = d_1 g for which no 2-simplex σ
/// has d_2 σ = f and d_0 σ = g.
std::vector<std::pair<Index, Index>> unfilled_inner_horns(const TruncatedSimplicialSet& s);

/// One row per simplex: level, index, label, faces, degeneracies.
std::string simplicial_to_tsv(const TruncatedSimplicialSet& s);

}  // namespace plasmic
