#include "plasmic/plasma.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>

namespace plasmic {

Plasma::Plasma(std::string name, std::vector<std::string> labels, const SumFn& sum)
    : name_(std::move(name)), labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InvalidInput("plasma '" + name_ + "' has an empty carrier");
  if (n > kMaxCarrier) {
    throw InvalidInput("plasma '" + name_ + "' has " + std::to_string(n) +
                       " elements; at most 63 are supported");
  }
  {
    std::set<std::string> seen;
    for (const auto& l : labels_) {
      if (l.empty()) throw InvalidInput("plasma '" + name_ + "' has an empty element label");
      if (!seen.insert(l).second) throw InvalidInput("duplicate element label '" + l + "'");
    }
  }
  const Subset all = carrier();
  table_.resize(n * (n + 1) / 2);
  for (Index a = 0; a < n; ++a) {
    for (Index b = a; b < n; ++b) {
      const Subset ab = sum(a, b);
      const Subset ba = sum(b, a);
      if (ab != ba) {
        throw InvalidInput("hyperoperation is not commutative: " + labels_[a] + "⊞" + labels_[b] +
                           " = " + format(ab) + " but " + labels_[b] + "⊞" + labels_[a] + " = " +
                           format(ba));
      }
      if (!is_subset(ab, all)) {
        throw InvalidInput("hypersum " + labels_[a] + "⊞" + labels_[b] +
                           " references an element outside the carrier");
      }
      table_[offset(a, b)] = ab;
    }
  }
  for (Index a = 0; a < n; ++a) {
    if (!contains(this->sum(0, a), a)) {
      throw InvalidInput("weak unitality fails: " + labels_[a] + " is not in " + labels_[0] +
                         "⊞" + labels_[a] + " = " + format(this->sum(0, a)));
    }
  }
}

std::optional<Index> Plasma::find(std::string_view label) const {
  for (Index i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

Plasma Plasma::renamed(std::string name) const {
  Plasma copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------------------

namespace {

Subset image_of(Subset s, std::span<const Index> map) {
  Subset out = 0;
  for_each_element(s, [&](Index c) { out |= singleton(map[c]); });
  return out;
}

}  // namespace

bool is_morphism(const Plasma& source, const Plasma& target, std::span<const Index> map) {
  if (map.size() != source.size()) return false;
  for (Index x : map) {
    if (x >= target.size()) return false;
  }
  if (map[source.unit()] != target.unit()) return false;
  for (Index a = 0; a < source.size(); ++a) {
    for (Index b = a; b < source.size(); ++b) {
      if (!is_subset(image_of(source.sum(a, b), map), target.sum(map[a], map[b]))) return false;
    }
  }
  return true;
}

bool is_isomorphism(const Plasma& source, const Plasma& target, std::span<const Index> map) {
  if (source.size() != target.size() || !is_morphism(source, target, map)) return false;
  ElementMap inverse(map.size(), 0);
  Subset hit = 0;
  for (Index a = 0; a < map.size(); ++a) {
    if (contains(hit, map[a])) return false;
    hit |= singleton(map[a]);
    inverse[map[a]] = a;
  }
  return is_morphism(target, source, inverse);
}

PlasmaMorphism::PlasmaMorphism(std::shared_ptr<const Plasma> source,
                               std::shared_ptr<const Plasma> target, ElementMap map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!source_ || !target_) throw InvalidInput("morphism with a null endpoint");
  if (!is_morphism(*source_, *target_, map_)) {
    throw InvalidInput("map is not a plasma morphism " + source_->name() + " -> " +
                       target_->name());
  }
}

PlasmaMorphism PlasmaMorphism::identity(std::shared_ptr<const Plasma> p) {
  ElementMap id(p->size());
  for (Index i = 0; i < id.size(); ++i) id[i] = i;
  return PlasmaMorphism(p, p, std::move(id));
}

PlasmaMorphism compose(const PlasmaMorphism& g, const PlasmaMorphism& f) {
  if (!(f.target() == g.source())) throw InvalidInput("compose: morphisms are not composable");
  ElementMap gf(f.map().size());
  for (Index i = 0; i < gf.size(); ++i) gf[i] = g(f(i));
  return PlasmaMorphism(f.source_ptr(), g.target_ptr(), std::move(gf));
}

std::vector<ElementMap> enumerate_morphism_maps(const Plasma& p, const Plasma& q, Budget budget) {
  const std::size_t np = p.size();
  const Index nq = static_cast<Index>(q.size());

  // A pair (a, b) can be checked once a, b and every element of a ⊞ b have
  // images; bucket the pairs by the last of those positions.
  std::vector<std::vector<std::pair<Index, Index>>> ready(np);
  for (Index a = 0; a < np; ++a) {
    for (Index b = a; b < np; ++b) {
      const Subset s = p.sum(a, b);
      if (s == 0) continue;
      const auto last = std::max<int>(static_cast<int>(b), highest_element(s));
      ready[static_cast<std::size_t>(last)].emplace_back(a, b);
    }
  }

  ElementMap map(np, 0);
  auto consistent = [&](std::size_t k) {
    for (auto [a, b] : ready[k]) {
      if (!is_subset(image_of(p.sum(a, b), map), q.sum(map[a], map[b]))) return false;
    }
    return true;
  };

  std::vector<ElementMap> out;
  if (!consistent(0)) return out;
  if (np == 1) {
    out.push_back(map);
    return out;
  }

  BudgetMeter meter(budget, "enumerate_morphisms(" + p.name() + ", " + q.name() + ")");
  // Iterative depth-first search; position k ranges over 1..np-1.
  std::size_t k = 1;
  std::vector<std::int64_t> next(np, 0);
  next[1] = 0;
  while (k >= 1) {
    if (next[k] >= nq) {
      --k;
      continue;
    }
    map[k] = static_cast<Index>(next[k]++);
    meter.charge();
    if (!consistent(k)) continue;
    if (k + 1 == np) {
      out.push_back(map);
    } else {
      ++k;
      next[k] = 0;
    }
  }
  return out;
}

std::vector<PlasmaMorphism> enumerate_morphisms(const Plasma& p, const Plasma& q, Budget budget) {
  auto sp = std::make_shared<const Plasma>(p);
  auto sq = std::make_shared<const Plasma>(q);
  std::vector<PlasmaMorphism> out;
  for (auto& m : enumerate_morphism_maps(p, q, budget)) out.emplace_back(sp, sq, std::move(m));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Inverse candidates for each element. The reversibility implication for a
// triple a ∈ b ⊞ c constrains c⁻¹ through "b ∈ a ⊞ c⁻¹" and b⁻¹ through
// "c ∈ b⁻¹ ⊞ a", one value at a time, so each element can be filtered on
// its own before the joint assignment is searched.
std::vector<Subset> inverse_candidates(const Plasma& p) {
  const std::size_t n = p.size();
  std::vector<Subset> cand(n, p.carrier());
  for (Index b = 0; b < n; ++b) {
    for (Index c = 0; c < n; ++c) {
      for_each_element(p.sum(b, c), [&](Index a) {
        Subset ok_c = 0;
        Subset ok_b = 0;
        for (Index v = 0; v < n; ++v) {
          if (contains(p.sum(a, v), b)) ok_c |= singleton(v);
          if (contains(p.sum(v, a), c)) ok_b |= singleton(v);
        }
        cand[c] &= ok_c;
        cand[b] &= ok_b;
      });
    }
  }
  return cand;
}

bool is_inverse_function(const Plasma& p, std::span<const Index> inv) {
  const std::size_t n = p.size();
  for (Index b = 0; b < n; ++b) {
    for (Index c = 0; c < n; ++c) {
      bool ok = true;
      for_each_element(p.sum(b, c), [&](Index a) {
        ok = ok && contains(p.sum(a, inv[c]), b) && contains(p.sum(inv[b], a), c);
      });
      if (!ok) return false;
    }
  }
  return true;
}

Witness make_witness(std::vector<Index> elements, std::string text) {
  return Witness{std::move(elements), std::move(text)};
}

}  // namespace

std::vector<ElementMap> enumerate_inverse_functions(const Plasma& p, Budget budget) {
  const auto cand = inverse_candidates(p);
  std::vector<ElementMap> out;
  if (std::any_of(cand.begin(), cand.end(), [](Subset s) { return s == 0; })) return out;

  BudgetMeter meter(budget, "enumerate_inverse_functions(" + p.name() + ")");
  const std::size_t n = p.size();
  ElementMap inv(n, 0);
  // Backtracking over the candidate lists; every complete assignment is
  // re-verified against the full implication.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      if (is_inverse_function(p, inv)) out.push_back(inv);
      return;
    }
    for_each_element(cand[k], [&](Index v) {
      meter.charge();
      inv[k] = v;
      self(self, k + 1);
    });
  };
  rec(rec, 0);
  return out;
}

PropertyReport check_properties(const Plasma& p) {
  PropertyReport r;
  const std::size_t n = p.size();
  const auto& L = p.labels();

  r.commutative = true;
  for (Index a = 0; a < n && r.commutative; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (p.sum(a, b) != p.sum(b, a)) {
        r.commutative = false;
        r.commutative_witness = make_witness({a, b}, L[a] + "⊞" + L[b] + " ≠ " + L[b] + "⊞" + L[a]);
        break;
      }
    }
  }

  r.weakly_unital = true;
  for (Index a = 0; a < n; ++a) {
    if (!contains(p.sum(p.unit(), a), a)) {
      r.weakly_unital = false;
      r.weakly_unital_witness = make_witness({a}, L[a] + " ∉ " + L[0] + "⊞" + L[a]);
      break;
    }
  }

  r.associative = true;
  for (Index a = 0; a < n && r.associative; ++a) {
    for (Index b = 0; b < n && r.associative; ++b) {
      for (Index c = 0; c < n; ++c) {
        const Subset left = p.sum_set(p.sum(a, b), c);
        const Subset right = p.sum_set(p.sum(b, c), a);
        if (left != right) {
          r.associative = false;
          r.associative_witness = make_witness(
              {a, b, c}, "(" + L[a] + "⊞" + L[b] + ")⊞" + L[c] + " = " + p.format(left) + " ≠ " +
                             p.format(right) + " = " + L[a] + "⊞(" + L[b] + "⊞" + L[c] + ")");
          break;
        }
      }
    }
  }

  r.strictly_unital = true;
  for (Index a = 0; a < n; ++a) {
    if (p.sum(a, p.unit()) != singleton(a)) {
      r.strictly_unital = false;
      r.strictly_unital_witness =
          make_witness({a}, L[a] + "⊞" + L[0] + " = " + p.format(p.sum(a, p.unit())));
      break;
    }
  }

  r.total = true;
  r.deterministic = true;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a; b < n; ++b) {
      const Subset s = p.sum(a, b);
      if (r.total && s == 0) {
        r.total = false;
        r.total_witness = make_witness({a, b}, L[a] + "⊞" + L[b] + " = {}");
      }
      if (r.deterministic && cardinality(s) > 1) {
        r.deterministic = false;
        r.deterministic_witness = make_witness({a, b}, L[a] + "⊞" + L[b] + " = " + p.format(s));
      }
    }
  }

  const auto cand = inverse_candidates(p);
  std::uint64_t count = 1;
  for (Index x = 0; x < n; ++x) {
    const auto k = static_cast<std::uint64_t>(cardinality(cand[x]));
    if (k == 0) {
      count = 0;
      r.reversible_witness = make_witness({x}, "no element can serve as the inverse of " + L[x]);
      break;
    }
    count = count > std::numeric_limits<std::uint64_t>::max() / k
                ? std::numeric_limits<std::uint64_t>::max()
                : count * k;
  }
  r.inverse_count = count;
  r.reversible = count > 0;
  if (r.reversible) {
    ElementMap inv(n);
    for (Index x = 0; x < n; ++x) inv[x] = static_cast<Index>(std::countr_zero(cand[x]));
    r.inverse = std::move(inv);
  }

  r.mosaic = r.strictly_unital && r.reversible;
  r.monoid = r.total && r.deterministic && r.associative;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

bool satisfies_block_conditions(const Plasma& p, const OrderedPartition& u) {
  const std::size_t n = p.size();
  if (!contains(u[0], p.unit())) return false;
  std::vector<int> block(n, -1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for_each_element(u[i], [&](Index x) { block[x] = static_cast<int>(i); });
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      auto i = static_cast<std::size_t>(block[x]);
      auto j = static_cast<std::size_t>(block[y]);
      if (i > j) std::swap(i, j);
      Subset interval = 0;
      for (std::size_t k = i; k <= j; ++k) interval |= u[k];
      // i == j is the closure condition on a single block.
      if (!is_subset(p.sum(x, y), interval)) return false;
    }
  }
  return true;
}

OrderedPartition partition_of(std::span<const Index> labeling, int n) {
  OrderedPartition u(static_cast<std::size_t>(n) + 1, 0);
  for (Index x = 0; x < labeling.size(); ++x) u[labeling[x]] |= singleton(x);
  return u;
}

}  // namespace

LinearTreeClassification classify_maps_to_linear_tree(const Plasma& p, int n, Budget budget) {
  if (n < 1) throw InvalidInput("classify_maps_to_linear_tree: need n >= 1");
  LinearTreeClassification out;
  const Plasma tree = linear_tree(n);
  for (const auto& m : enumerate_morphism_maps(p, tree, budget)) {
    out.partitions.push_back(partition_of(m, n));
  }
  out.conditions_hold = std::all_of(out.partitions.begin(), out.partitions.end(),
                                    [&](const auto& u) { return satisfies_block_conditions(p, u); });

  // Independent side: every labeling carrier → {0..n}, kept when its blocks
  // satisfy the conditions.
  BudgetMeter meter(budget, "classify_maps_to_linear_tree(" + p.name() + ")");
  std::set<OrderedPartition> from_labelings;
  ElementMap labeling(p.size(), 0);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == labeling.size()) {
      auto u = partition_of(labeling, n);
      if (satisfies_block_conditions(p, u)) from_labelings.insert(std::move(u));
      return;
    }
    for (Index v = 0; v <= static_cast<Index>(n); ++v) {
      meter.charge();
      labeling[k] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  const std::set<OrderedPartition> from_morphisms(out.partitions.begin(), out.partitions.end());
  out.bijective = from_morphisms.size() == out.partitions.size() && from_morphisms == from_labelings;
  return out;
}

}  // namespace plasmic
