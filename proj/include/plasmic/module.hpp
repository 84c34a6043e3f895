#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "plasmic/bits.hpp"
#include "plasmic/errors.hpp"
#include "plasmic/finstar.hpp"
#include "plasmic/plasma.hpp"

namespace plasmic {

/// A pointed functor Fin_* → Set_* restricted to ⟨0⟩..⟨N⟩.
///
/// Level n is a list of element names with the basepoint at index 0. For
/// every pair of levels (n, m) the action of all (m+1)^n pointed maps is
/// stored densely: row rank(φ) holds φ applied to each element of X_n.
class TabulatedModule {
 public:
  using ActionFn = std::function<Index(const PointedMap&, Index)>;

  /// Tabulates `act` over every pointed map between levels ≤ N, where
  /// N = levels.size() - 1.
  TabulatedModule(std::string name, std::vector<std::vector<std::string>> levels,
                  const ActionFn& act);

  /// Raw tables, one per level pair in the order (n, m) = (0,0), (0,1), ...
  /// Shapes and ranges are validated; functoriality is not (see
  /// check_functoriality).
  TabulatedModule(std::string name, std::vector<std::vector<std::string>> levels,
                  std::vector<std::vector<Index>> tables);

  const std::string& name() const noexcept { return name_; }
  int truncation() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  std::size_t size(int n) const { return levels_.at(static_cast<std::size_t>(n)).size(); }
  const std::vector<std::vector<std::string>>& levels() const noexcept { return levels_; }
  const std::vector<std::string>& labels(int n) const { return levels_.at(static_cast<std::size_t>(n)); }

  /// φ acting on all of X_n.
  std::span<const Index> action(const PointedMap& phi) const;
  Index act(const PointedMap& phi, Index x) const { return action(phi)[x]; }

  const std::vector<std::vector<Index>>& tables() const noexcept { return tables_; }
  /// Write access for building deliberately broken modules in tests.
  std::vector<std::vector<Index>>& mutable_tables() noexcept { return tables_; }

  std::size_t table_index(int n, int m) const noexcept {
    return static_cast<std::size_t>(n) * levels_.size() + static_cast<std::size_t>(m);
  }

 private:
  void validate_shape() const;

  std::string name_;
  std::vector<std::vector<std::string>> levels_;
  std::vector<std::vector<Index>> tables_;
};

struct CheckResult {
  bool ok = true;
  std::string witness;
};

/// The inclusion Fin_* → Set_*, truncated at N.
TabulatedModule f1_module(int N);

/// X_k = Fin_*(⟨n⟩, ⟨k⟩) acted on by postcomposition, basepoint the zero map.
TabulatedModule corepresented_module(int n, int N, Budget budget = {});

/// Wedge of pointed functors; elements of summand j are named "j:label".
TabulatedModule wedge_sum(std::span<const TabulatedModule> summands);

/// Carrier X_1, unit the image of X_0, and x ⊞ y = α((ρ₁, ρ₂)⁻¹(x, y)).
Plasma psi_truncate(const TabulatedModule& x);

/// Singleton X_0, pointedness, identities and composition at levels ≤ N.
CheckResult check_functoriality(const TabulatedModule& x);

/// f[n][x] is the image of x ∈ X_n.
using ModuleMorphism = std::vector<std::vector<Index>>;

bool is_natural(const TabulatedModule& x, const TabulatedModule& y, const ModuleMorphism& f);
bool is_module_isomorphism(const TabulatedModule& x, const TabulatedModule& y,
                           const ModuleMorphism& f);
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);
ModuleMorphism identity_morphism(const TabulatedModule& x);

/// All pointed natural families X → Y at the shared truncation level.
/// Elements are assigned level by level; an element reached from an earlier
/// one by some pointed map has its image forced, and every other naturality
/// square is checked as soon as both of its corners are assigned.
std::vector<ModuleMorphism> enumerate_module_morphisms(const TabulatedModule& x,
                                                       const TabulatedModule& y,
                                                       Budget budget = {});

struct GLReport {
  int n = 0;
  int truncation = 0;
  /// Invertible natural endomorphisms of the n-fold wedge of 𝔽₁.
  std::vector<ModuleMorphism> elements;
  /// Number of endomorphisms inspected, invertible or not.
  std::size_t endomorphism_count = 0;
  bool group_axioms = false;
  /// The summand permutations are natural, pairwise distinct, and exhaust
  /// the invertible endomorphisms.
  bool equals_summand_permutations = false;
  /// Permutations of {1..n} in the same order as `elements` when the
  /// previous flag holds.
  std::vector<std::vector<int>> permutations;
};

GLReport gl_n(int n, int N, Budget budget = {});

nlohmann::json module_to_json(const TabulatedModule& x);
TabulatedModule module_from_json(const nlohmann::json& j);

}  // namespace plasmic
