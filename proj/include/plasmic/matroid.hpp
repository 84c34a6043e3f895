#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plasmic/bits.hpp"
#include "plasmic/errors.hpp"
#include "plasmic/module.hpp"
#include "plasmic/plasma.hpp"

namespace plasmic {

inline constexpr std::size_t kMaxMatroidGround = 16;

/// Exhaustive check of the closure axioms (extensive, monotone, idempotent,
/// exchange) plus 0 ∈ κ(∅). `closure[A]` is κ(A) for every bitmask A.
CheckResult check_matroid_axioms(std::size_t ground_size, const std::vector<Subset>& closure);

/// A pointed matroid on at most 16 elements, basepoint at index 0, with its
/// closure operator stored as a full table.
class PointedMatroid {
 public:
  /// Throws InvalidInput naming the first violated axiom and subset.
  PointedMatroid(std::string name, std::vector<std::string> ground, std::vector<Subset> closure);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return ground_.size(); }
  const std::vector<std::string>& labels() const noexcept { return ground_; }
  Subset closure(Subset a) const { return closure_.at(static_cast<std::size_t>(a)); }
  const std::vector<Subset>& closure_table() const noexcept { return closure_; }
  std::string format(Subset s) const { return format_subset(s, ground_); }

 private:
  std::string name_;
  std::vector<std::string> ground_;
  std::vector<Subset> closure_;
};

PointedMatroid from_closure_table(std::string name, std::vector<std::string> ground,
                                  std::vector<Subset> closure);

/// Rank ≤ 3 geometry from its lines, with a basepoint "0" adjoined. Two
/// points span the unique line through them plus 0 (just {0,x,y} when no
/// listed line holds both); a collinear set spans its line; anything else
/// spans the whole ground set. The result is validated.
PointedMatroid from_lines(std::string name, std::vector<std::string> points,
                          const std::vector<std::vector<std::string>>& lines);

/// All vectors of 𝔽₂^k (element index = vector value) with κ = linear span.
PointedMatroid pg_f2(int k);

/// Points 1..n with κ(A) = A ∪ {0}.
PointedMatroid free_simple(int n);

struct MatroidClassification {
  bool matroid = false;
  bool simple_pointed = false;
  bool projective = false;
  std::string witness;
};

MatroidClassification classify_matroid(const PointedMatroid& m, Budget budget = {});

/// x ⊞ y = κ(x,y) − {x,y,0} for distinct nonzero x, y; x ⊞ x = {x,0};
/// x ⊞ 0 = {x}.
Plasma pi_plasma(const PointedMatroid& m);

bool is_matroid_morphism(const PointedMatroid& m, const PointedMatroid& n,
                         std::span<const Index> map);

/// Pointed functions with f(κA) ⊆ κ'(fA) for all A, in lexicographic order.
std::vector<ElementMap> enumerate_matroid_morphisms(const PointedMatroid& m,
                                                    const PointedMatroid& n, Budget budget = {});

struct EmbeddingReport {
  std::size_t matroid_homs = 0;
  std::size_t plasma_homs = 0;
  /// Every matroid morphism is a morphism of the Π plasmas.
  bool functorial = false;
  bool faithful = false;
  bool both_projective = false;
  /// Only meaningful when both_projective.
  bool full = false;
};

EmbeddingReport embedding_check(const PointedMatroid& m, const PointedMatroid& n,
                                Budget budget = {});

/// A bijection whose inverse is also a matroid morphism, if one exists.
std::optional<ElementMap> find_isomorphism(const PointedMatroid& m, const PointedMatroid& n,
                                           Budget budget = {});

/// `{"points": [...], "lines": [[...], ...]}`,
/// `{"ground": [...], "closure": {"a,b": "a,b,c", ...}}` (ground[0] is the
/// basepoint, "" is the empty set) or `{"builder": "pg_f2", "k": 3}` /
/// `{"builder": "free_simple", "n": 3}`.
PointedMatroid matroid_from_json(const nlohmann::json& j);

/// pg_f2(k), pg_f2:k, free_simple(n), free_simple:n.
PointedMatroid build_matroid(std::string_view descriptor);

}  // namespace plasmic
