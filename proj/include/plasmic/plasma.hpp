#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "plasmic/bits.hpp"
#include "plasmic/errors.hpp"

namespace plasmic {

/// A finite weakly unital commutative hypermagma.
///
/// The carrier is the index range 0..size()-1 and the weak unit is always
/// index 0. Hypersums are subsets of the carrier stored once per unordered
/// pair, so commutativity holds by construction. The constructor rejects
/// tables that are not symmetric or in which some a is missing from 0 ⊞ a.
class Plasma {
 public:
  using SumFn = std::function<Subset(Index, Index)>;

  /// `labels[0]` names the weak unit. `sum` is queried for every ordered
  /// pair so that asymmetric input is detected.
  Plasma(std::string name, std::vector<std::string> labels, const SumFn& sum);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return labels_.size(); }
  Index unit() const noexcept { return 0; }
  Subset carrier() const noexcept { return full_set(size()); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Index i) const { return labels_.at(i); }
  std::optional<Index> find(std::string_view label) const;

  Subset sum(Index a, Index b) const noexcept {
    return a <= b ? table_[offset(a, b)] : table_[offset(b, a)];
  }

  /// Union of s ⊞ b over s in `as`.
  Subset sum_set(Subset as, Index b) const noexcept {
    Subset out = 0;
    for_each_element(as, [&](Index a) { out |= sum(a, b); });
    return out;
  }

  std::string format(Subset s) const { return format_subset(s, labels_); }

  Plasma renamed(std::string name) const;

  /// Same labels and same table; the name is ignored.
  friend bool operator==(const Plasma& a, const Plasma& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

 private:
  std::size_t offset(Index a, Index b) const noexcept {
    // Row-major upper triangle including the diagonal.
    return static_cast<std::size_t>(a) * size() - static_cast<std::size_t>(a) * (a + 1) / 2 + b;
  }

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Subset> table_;
};

/// A function on carrier indices, position i holding the image of i.
using ElementMap = std::vector<Index>;

/// True when `map` preserves the unit and satisfies f(a ⊞ b) ⊆ f(a) ⋆ f(b).
bool is_morphism(const Plasma& source, const Plasma& target, std::span<const Index> map);

/// A bijective morphism whose inverse is also a morphism.
bool is_isomorphism(const Plasma& source, const Plasma& target, std::span<const Index> map);

class PlasmaMorphism {
 public:
  /// Throws InvalidInput unless `map` is a morphism.
  PlasmaMorphism(std::shared_ptr<const Plasma> source, std::shared_ptr<const Plasma> target,
                 ElementMap map);

  static PlasmaMorphism identity(std::shared_ptr<const Plasma> p);

  const Plasma& source() const noexcept { return *source_; }
  const Plasma& target() const noexcept { return *target_; }
  const std::shared_ptr<const Plasma>& source_ptr() const noexcept { return source_; }
  const std::shared_ptr<const Plasma>& target_ptr() const noexcept { return target_; }
  const ElementMap& map() const noexcept { return map_; }
  Index operator()(Index a) const { return map_.at(a); }

  friend bool operator==(const PlasmaMorphism& a, const PlasmaMorphism& b) {
    return *a.source_ == *b.source_ && *a.target_ == *b.target_ && a.map_ == b.map_;
  }

 private:
  std::shared_ptr<const Plasma> source_;
  std::shared_ptr<const Plasma> target_;
  ElementMap map_;
};

/// g after f.
PlasmaMorphism compose(const PlasmaMorphism& g, const PlasmaMorphism& f);

/// All morphisms p → q in lexicographic order of their map vectors.
/// Backtracks over images in index order, rejecting a partial map as soon as
/// one pair whose hypersum is fully assigned violates the containment.
std::vector<ElementMap> enumerate_morphism_maps(const Plasma& p, const Plasma& q,
                                                Budget budget = {});

std::vector<PlasmaMorphism> enumerate_morphisms(const Plasma& p, const Plasma& q,
                                                Budget budget = {});

// ---------------------------------------------------------------------------
// Properties

struct Witness {
  std::vector<Index> elements;
  std::string text;
};

struct PropertyReport {
  bool commutative = false;
  bool weakly_unital = false;
  bool associative = false;
  bool strictly_unital = false;
  bool total = false;
  bool deterministic = false;
  bool reversible = false;
  bool mosaic = false;
  bool monoid = false;

  std::optional<Witness> commutative_witness;
  std::optional<Witness> weakly_unital_witness;
  std::optional<Witness> associative_witness;
  std::optional<Witness> strictly_unital_witness;
  std::optional<Witness> total_witness;
  std::optional<Witness> deterministic_witness;
  std::optional<Witness> reversible_witness;

  /// Lexicographically first inverse function, when reversible.
  std::optional<ElementMap> inverse;
  /// Number of functions satisfying the reversibility implication.
  std::uint64_t inverse_count = 0;
};

PropertyReport check_properties(const Plasma& p);

/// Every function M → M satisfying: a ∈ b ⊞ c implies b ∈ a ⊞ c⁻¹ and
/// c ∈ b⁻¹ ⊞ a. Returned in lexicographic order.
std::vector<ElementMap> enumerate_inverse_functions(const Plasma& p, Budget budget = {});

// ---------------------------------------------------------------------------
// Maps into the linear tree T_n

/// Blocks U_0..U_n of a partition of the carrier (some possibly empty).
using OrderedPartition = std::vector<Subset>;

struct LinearTreeClassification {
  std::vector<OrderedPartition> partitions;
  /// Each partition obtained from a morphism meets the three block
  /// conditions (unit in U_0, blocks sum-closed, cross sums in the interval).
  bool conditions_hold = false;
  /// The partitions meeting the block conditions, found independently by
  /// scanning all labelings, are exactly those coming from morphisms.
  bool bijective = false;
};

LinearTreeClassification classify_maps_to_linear_tree(const Plasma& p, int n,
                                                      Budget budget = {});

// ---------------------------------------------------------------------------
// Builders. Structured builders keep their natural element order with the
// unit first; builders taking free-form labels sort the non-unit labels.

Plasma krasner();
Plasma psi_f1();
Plasma boolean_monoid();
/// Subsets of [n] with X ⋎ Y = {X ∪ Y} when disjoint and ∅ otherwise.
/// Element i is the subset with bitmask i.
Plasma power_set(int n);
/// Path plasma of the linear tree 0 - 1 - ... - n rooted at 0.
Plasma linear_tree(int n);
/// Z/n under addition.
Plasma cyclic_group(int n);

using LabelPair = std::pair<std::string, std::string>;

/// Interval plasma of the partial order generated by `relation` (pairs
/// a ≤ b; reflexive-transitive closure is taken). `least` must lie below
/// every element.
Plasma poset_plasma(std::string name, std::vector<std::string> elements,
                    const std::vector<LabelPair>& relation, const std::string& least);

/// Path plasma of a tree given by undirected edges, unit at `root`.
Plasma tree_plasma(std::string name, std::vector<std::string> vertices,
                   const std::vector<LabelPair>& edges, const std::string& root);

/// A commutative monoid (or partial monoid) from a multiplication table over
/// `elements`; table[i][j] is an element label or nullopt for undefined.
/// elements[0] is the identity.
Plasma monoid_plasma(std::string name, std::vector<std::string> elements,
                     const std::vector<std::vector<std::optional<std::string>>>& table);

/// Reads the order relation back out of an interval plasma: x ≤ y exactly
/// when x lies in unit ⊞ y. Entry y is the set of all x below y.
std::vector<Subset> recovered_order(const Plasma& p);

/// Table format `{"name","elements","unit","sum":{"a,b":[...]}}` or a
/// builder object `{"builder": "...", ...}`.
Plasma plasma_from_json(const nlohmann::json& j);
nlohmann::json plasma_to_json(const Plasma& p);

/// Named builders: krasner, psi_f1, boolean, power_set(n), linear_tree(n),
/// cyclic(n); `name:n` is accepted for `name(n)`.
Plasma build_plasma(std::string_view descriptor);

}  // namespace plasmic
