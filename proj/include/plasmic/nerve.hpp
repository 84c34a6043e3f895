#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "plasmic/bits.hpp"
#include "plasmic/errors.hpp"
#include "plasmic/finstar.hpp"
#include "plasmic/module.hpp"
#include "plasmic/plasma.hpp"

namespace plasmic {

/// A family (x_S) over the subsets S of [n], entries[S] indexed by bitmask.
struct SubsetTuple {
  int n = 0;
  std::vector<Index> entries;

  Index operator[](Subset s) const { return entries[static_cast<std::size_t>(s)]; }
  friend auto operator<=>(const SubsetTuple&, const SubsetTuple&) = default;
};

/// x_∅ = unit and x_{S∪T} ∈ x_S ⊞ x_T for all disjoint nonempty S, T.
bool is_nerve_tuple(const Plasma& m, const SubsetTuple& t);

/// Level n of the nerve, sorted by entries vector.
///
/// Subsets are filled in (cardinality, bitmask) order; the candidates for
/// x_S are the intersection of x_T ⊞ x_{S∖T} over all splits of S, all of
/// which are already assigned.
std::vector<SubsetTuple> nerve_level(const Plasma& m, int n, Budget budget = {});

/// (x_S)_S ↦ (x_{φ⁻¹T})_T.
SubsetTuple nerve_act(const PointedMap& phi, const SubsetTuple& t);

/// Entries in (cardinality, bitmask) order with x_∅ left out, e.g. "(1,0,1)".
std::string format_tuple(const Plasma& m, const SubsetTuple& t);

std::optional<Index> find_tuple(const std::vector<SubsetTuple>& level, const SubsetTuple& t);

/// Levels are nerve_level(m, 0..N); elements are labelled by format_tuple.
TabulatedModule nerve_module(const Plasma& m, int N, Budget budget = {});

/// Postcomposition (x_S) ↦ (f(x_S)) between the nerves of its endpoints.
ModuleMorphism nerve_of_morphism(const PlasmaMorphism& f, int N, Budget budget = {});

/// z ↦ (ρ_S z)_S into nerve_module(psi_truncate(x), N). Elements whose image
/// is not a nerve tuple are reported through `defined`.
struct UnitComponent {
  ModuleMorphism map;
  bool defined = true;
  std::string witness;
};
UnitComponent unit_component(const TabulatedModule& x, Budget budget = {});

/// The counit ΨĤM → M, reading off the x_{1} coordinate.
ElementMap counit(const Plasma& m, Budget budget = {});

struct AdjunctionReport {
  std::size_t plasma_homs = 0;
  std::size_t module_homs = 0;
  /// Every η(f) is a natural family into ĤM.
  bool well_defined = false;
  bool bijective = false;
  /// The counit is a plasma isomorphism acting as the identity on indices.
  bool counit_identity = false;
  bool triangle_identities = false;
  bool ok() const { return well_defined && bijective && counit_identity && triangle_identities; }
};

/// Plas(ΨX, M) → Mod(X, ĤM), f ↦ (z ↦ (f(ρ_S z))_S), at X's truncation level.
AdjunctionReport adjunction_check(const TabulatedModule& x, const Plasma& m, Budget budget = {});

struct CorepresentabilityReport {
  std::size_t plasma_homs = 0;
  std::size_t nerve_size = 0;
  bool bijective = false;
  /// Compatible with every pointed map ⟨n⟩ → ⟨k⟩, k ≤ n.
  bool natural = false;
  bool ok() const { return bijective && natural; }
};

/// f ↦ (f(S))_S from Plas(𝒫(n), M) to level n of the nerve of M.
CorepresentabilityReport corepresentability_check(const Plasma& m, int n, Budget budget = {});

struct SegalReport {
  /// X → ĤΨX is a bijection at every level.
  bool iso_form = false;
  /// X_n is the limit of X_1 over the triples cut out by X_2.
  bool pullback_form = false;
  bool agree() const { return iso_form == pullback_form; }
  std::string witness;
};

SegalReport segal_check(const TabulatedModule& x, Budget budget = {});

/// HA_n = A^n with φ acting by (a_i) ↦ (Σ_{φ(i)=j} a_i)_j. A must be a
/// commutative monoid.
TabulatedModule eilenberg_maclane(const Plasma& a, int N);

/// Projection of the nerve of A onto singleton coordinates, as a morphism
/// nerve_module(a, N) → eilenberg_maclane(a, N).
ModuleMorphism em_projection(const Plasma& a, int N, Budget budget = {});

}  // namespace plasmic
