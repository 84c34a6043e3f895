#include "plasmic/nerve.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace plasmic {

namespace {

void check_arity(int n, std::string_view what) {
  if (n < 0 || n > 12) throw InvalidInput(std::string(what) + ": arity must be in 0..12");
}

Index add_in_monoid(const Plasma& a, Index x, Index y) {
  return static_cast<Index>(std::countr_zero(a.sum(x, y)));
}

}  // namespace

bool is_nerve_tuple(const Plasma& m, const SubsetTuple& t) {
  if (t.n < 0 || t.entries.size() != (std::size_t{1} << t.n)) return false;
  if (t.entries[0] != m.unit()) return false;
  for (Index v : t.entries) {
    if (v >= m.size()) return false;
  }
  const Subset all = full_set(static_cast<std::size_t>(t.n));
  for (Subset s = 1; s <= all; ++s) {
    // Proper nonempty t_part with t_part < complement covers each unordered split once.
    for (Subset part = (s - 1) & s; part != 0; part = (part - 1) & s) {
      const Subset rest = s & ~part;
      if (part > rest) continue;
      if (!contains(m.sum(t[part], t[rest]), t[s])) return false;
    }
  }
  return true;
}

std::vector<SubsetTuple> nerve_level(const Plasma& m, int n, Budget budget) {
  check_arity(n, "nerve_level");
  const auto order = subsets_by_cardinality(n);
  std::vector<std::vector<std::pair<Subset, Subset>>> splits(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Subset s = order[i];
    for (Subset part = (s - 1) & s; part != 0; part = (part - 1) & s) {
      const Subset rest = s & ~part;
      if (part < rest) splits[i].emplace_back(part, rest);
    }
  }

  BudgetMeter meter(budget, "nerve_level(" + m.name() + ", " + std::to_string(n) + ")");
  std::vector<SubsetTuple> out;
  SubsetTuple t{n, std::vector<Index>(std::size_t{1} << n, 0)};
  t.entries[0] = m.unit();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == order.size()) {
      out.push_back(t);
      return;
    }
    Subset cand = m.carrier();
    for (auto [a, b] : splits[i]) {
      cand &= m.sum(t[a], t[b]);
      if (cand == 0) return;
    }
    for_each_element(cand, [&](Index v) {
      meter.charge();
      t.entries[static_cast<std::size_t>(order[i])] = v;
      self(self, i + 1);
    });
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

SubsetTuple nerve_act(const PointedMap& phi, const SubsetTuple& t) {
  if (phi.source() != t.n) throw InvalidInput("nerve_act: arity mismatch with " + phi.to_string());
  const int m = phi.target();
  SubsetTuple out{m, std::vector<Index>(std::size_t{1} << m)};
  for (Subset s = 0; s < out.entries.size(); ++s) out.entries[s] = t[preimage(phi, s)];
  return out;
}

std::string format_tuple(const Plasma& m, const SubsetTuple& t) {
  std::string s = "(";
  bool first = true;
  for (Subset sub : subsets_by_cardinality(t.n)) {
    if (!first) s += ',';
    first = false;
    s += m.label(t[sub]);
  }
  return s + ")";
}

std::optional<Index> find_tuple(const std::vector<SubsetTuple>& level, const SubsetTuple& t) {
  auto it = std::lower_bound(level.begin(), level.end(), t);
  if (it == level.end() || *it != t) return std::nullopt;
  return static_cast<Index>(it - level.begin());
}

TabulatedModule nerve_module(const Plasma& m, int N, Budget budget) {
  check_arity(N, "nerve_module");
  std::vector<std::vector<SubsetTuple>> tuples;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= N; ++n) {
    tuples.push_back(nerve_level(m, n, budget));
    auto& l = labels.emplace_back();
    for (const auto& t : tuples.back()) l.push_back(format_tuple(m, t));
  }
  return TabulatedModule("H(" + m.name() + ")", std::move(labels),
                         [&](const PointedMap& phi, Index x) {
                           const auto& level = tuples[static_cast<std::size_t>(phi.target())];
                           const auto image = nerve_act(phi, tuples[static_cast<std::size_t>(phi.source())][x]);
                           const auto found = find_tuple(level, image);
                           if (!found) {
                             throw InvalidInput("nerve action of " + phi.to_string() +
                                                " left the nerve of " + m.name());
                           }
                           return *found;
                         });
}

ModuleMorphism nerve_of_morphism(const PlasmaMorphism& f, int N, Budget budget) {
  check_arity(N, "nerve_of_morphism");
  ModuleMorphism out(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const auto from = nerve_level(f.source(), n, budget);
    const auto to = nerve_level(f.target(), n, budget);
    for (const auto& t : from) {
      SubsetTuple image = t;
      for (auto& e : image.entries) e = f(e);
      const auto idx = find_tuple(to, image);
      if (!idx) throw InvalidInput("nerve_of_morphism: image is not a nerve tuple");
      out[static_cast<std::size_t>(n)].push_back(*idx);
    }
  }
  return out;
}

UnitComponent unit_component(const TabulatedModule& x, Budget budget) {
  const Plasma psi = psi_truncate(x);
  const int N = x.truncation();
  UnitComponent out;
  out.map.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const auto level = nerve_level(psi, n, budget);
    std::vector<std::span<const Index>> rho_rows(std::size_t{1} << n);
    for (Subset s = 1; s < rho_rows.size(); ++s) rho_rows[s] = x.action(rho_subset(n, s));
    auto& fn = out.map[static_cast<std::size_t>(n)];
    for (Index z = 0; z < x.size(n); ++z) {
      SubsetTuple t{n, std::vector<Index>(rho_rows.size(), 0)};
      for (Subset s = 1; s < rho_rows.size(); ++s) t.entries[s] = rho_rows[s][z];
      const auto idx = find_tuple(level, t);
      if (!idx) {
        if (out.defined) {
          out.defined = false;
          out.witness = "element " + x.labels(n)[z] + " of level " + std::to_string(n) +
                        " maps to " + format_tuple(psi, t) + ", which is not in the nerve";
        }
        fn.push_back(0);
        continue;
      }
      fn.push_back(*idx);
    }
  }
  return out;
}

ElementMap counit(const Plasma& m, Budget budget) {
  const auto level = nerve_level(m, 1, budget);
  ElementMap out;
  for (const auto& t : level) out.push_back(t[1]);
  return out;
}

AdjunctionReport adjunction_check(const TabulatedModule& x, const Plasma& m, Budget budget) {
  const int N = x.truncation();
  if (N < 2) throw InvalidInput("adjunction_check: truncation level must be >= 2");
  AdjunctionReport r;
  const Plasma psi = psi_truncate(x);
  const TabulatedModule hm = nerve_module(m, N, budget);
  std::vector<std::vector<SubsetTuple>> levels;
  for (int n = 0; n <= N; ++n) levels.push_back(nerve_level(m, n, budget));

  const auto plas = enumerate_morphism_maps(psi, m, budget);
  const auto mods = enumerate_module_morphisms(x, hm, budget);
  r.plasma_homs = plas.size();
  r.module_homs = mods.size();

  r.well_defined = true;
  std::set<ModuleMorphism> image;
  for (const auto& f : plas) {
    ModuleMorphism eta(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N && r.well_defined; ++n) {
      for (Index z = 0; z < x.size(n); ++z) {
        SubsetTuple t{n, std::vector<Index>(std::size_t{1} << n, 0)};
        for (Subset s = 1; s < t.entries.size(); ++s) t.entries[s] = f[x.act(rho_subset(n, s), z)];
        const auto idx = find_tuple(levels[static_cast<std::size_t>(n)], t);
        if (!idx) {
          r.well_defined = false;
          break;
        }
        eta[static_cast<std::size_t>(n)].push_back(*idx);
      }
    }
    if (!r.well_defined || !is_natural(x, hm, eta)) {
      r.well_defined = false;
      break;
    }
    image.insert(std::move(eta));
  }
  const std::set<ModuleMorphism> target(mods.begin(), mods.end());
  r.bijective = r.well_defined && image.size() == plas.size() && image == target;

  // Counit ΨĤM → M.
  const Plasma psi_hm = psi_truncate(hm);
  const ElementMap eps = counit(m, budget);
  bool identity = eps.size() == m.size();
  for (Index i = 0; identity && i < eps.size(); ++i) identity = eps[i] == i;
  r.counit_identity = identity && is_isomorphism(psi_hm, m, eps);
  if (identity) {
    for (Index a = 0; a < m.size(); ++a) {
      for (Index b = 0; b < m.size(); ++b) {
        r.counit_identity = r.counit_identity && psi_hm.sum(a, b) == m.sum(a, b);
      }
    }
  }

  // Ĥε ∘ η_{ĤM} = id and ε_{ΨX} ∘ Ψη_X = id.
  bool triangles = r.counit_identity;
  if (triangles) {
    const UnitComponent eta_hm = unit_component(hm, budget);
    const auto sp = std::make_shared<const Plasma>(psi_hm);
    const auto sm = std::make_shared<const Plasma>(m);
    const ModuleMorphism h_eps = nerve_of_morphism(PlasmaMorphism(sp, sm, eps), N, budget);
    triangles = eta_hm.defined && compose(h_eps, eta_hm.map) == identity_morphism(hm);
  }
  const UnitComponent eta_x = unit_component(x, budget);
  const ElementMap eps_psi = counit(psi, budget);
  if (eta_x.defined) {
    for (Index z = 0; z < x.size(1); ++z) triangles = triangles && eps_psi[eta_x.map[1][z]] == z;
  } else {
    triangles = false;
  }
  r.triangle_identities = triangles;
  return r;
}

CorepresentabilityReport corepresentability_check(const Plasma& m, int n, Budget budget) {
  if (n < 0 || n > 5) throw InvalidInput("corepresentability_check: n must be in 0..5");
  CorepresentabilityReport r;
  auto eta = [](const ElementMap& f, int k) {
    SubsetTuple t{k, std::vector<Index>(f.begin(), f.end())};
    return t;
  };
  const Plasma pn = power_set(n);
  const auto homs = enumerate_morphism_maps(pn, m, budget);
  const auto level = nerve_level(m, n, budget);
  r.plasma_homs = homs.size();
  r.nerve_size = level.size();
  std::set<SubsetTuple> image;
  bool inside = true;
  for (const auto& f : homs) {
    auto t = eta(f, n);
    inside = inside && find_tuple(level, t).has_value();
    image.insert(std::move(t));
  }
  r.bijective = inside && image.size() == homs.size() && image.size() == level.size();

  // φ: ⟨n⟩ → ⟨k⟩ acts on the left by precomposition with S ↦ φ⁻¹S and on the
  // right by the nerve action.
  bool natural = true;
  for (int k = 0; k <= n && natural; ++k) {
    const Plasma pk = power_set(k);
    for (const auto& phi : enumerate_pointed_maps(n, k, budget)) {
      ElementMap pull(pk.size());
      for (Index s = 0; s < pk.size(); ++s) pull[s] = static_cast<Index>(preimage(phi, s));
      if (!is_morphism(pk, pn, pull)) {
        natural = false;
        break;
      }
      for (const auto& f : homs) {
        ElementMap fp(pk.size());
        for (Index s = 0; s < pk.size(); ++s) fp[s] = f[pull[s]];
        if (!is_morphism(pk, m, fp) || eta(fp, k) != nerve_act(phi, eta(f, n))) {
          natural = false;
          break;
        }
      }
      if (!natural) break;
    }
  }
  r.natural = natural;
  return r;
}

SegalReport segal_check(const TabulatedModule& x, Budget budget) {
  const int N = x.truncation();
  if (N < 2) throw InvalidInput("segal_check: truncation level must be >= 2");
  SegalReport r;

  // Iso form.
  std::string iso_witness;
  try {
    const Plasma psi = psi_truncate(x);
    const UnitComponent eta = unit_component(x, budget);
    r.iso_form = eta.defined;
    iso_witness = eta.witness;
    for (int n = 0; n <= N && r.iso_form; ++n) {
      const auto& fn = eta.map[static_cast<std::size_t>(n)];
      std::set<Index> hit(fn.begin(), fn.end());
      const std::size_t target = nerve_level(psi, n, budget).size();
      if (hit.size() != fn.size() || hit.size() != target) {
        r.iso_form = false;
        iso_witness = "level " + std::to_string(n) + ": " + std::to_string(fn.size()) +
                      " elements, " + std::to_string(hit.size()) + " distinct images, nerve has " +
                      std::to_string(target);
      }
    }
  } catch (const InvalidInput& e) {
    r.iso_form = false;
    iso_witness = std::string("level 1 does not carry a plasma: ") + e.what();
  }

  // Pullback form: Z ⊆ X_1³ is the image of X_2 under (ρ₁, ρ₂, α); P_n is
  // the set of families t over 𝒫([n]) with t(∅) = e and
  // (t(A), t(B), t(A∪B)) ∈ Z for every pair of disjoint A, B.
  std::string pb_witness;
  const std::size_t s1 = x.size(1);
  if (s1 > kMaxCarrier) throw InvalidInput("segal_check: level 1 has more than 63 elements");
  std::vector<Subset> z(s1 * s1, 0);
  {
    const auto r1 = x.action(rho(2, 1));
    const auto r2 = x.action(rho(2, 2));
    const auto a = x.action(alpha());
    for (Index e = 0; e < x.size(2); ++e) z[r1[e] * s1 + r2[e]] |= singleton(a[e]);
  }
  const Index e1 = x.act(unit_map(), 0);
  r.pullback_form = true;
  BudgetMeter meter(budget, "segal_check(" + x.name() + ")");
  for (int n = 0; n <= N && r.pullback_form; ++n) {
    const auto order = subsets_by_cardinality(n);
    std::set<std::vector<Index>> pn;
    std::vector<Index> t(std::size_t{1} << n, 0);
    t[0] = e1;
    if (!contains(z[e1 * s1 + e1], e1)) {
      r.pullback_form = false;
      pb_witness = "the unit triple (e,e,e) is not realised at level 2";
      break;
    }
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == order.size()) {
        pn.insert(t);
        return;
      }
      const Subset s = order[i];
      Subset cand = full_set(s1);
      // Ordered splits (A, S∖A), including A = ∅ and A = S.
      for (Subset part = s;; part = (part - 1) & s) {
        const Subset rest = s & ~part;
        if (part != 0 && rest != 0) cand &= z[t[part] * s1 + t[rest]];
        if (part == 0) break;
      }
      for_each_element(cand, [&](Index v) {
        meter.charge();
        if (!contains(z[v * s1 + e1], v) || !contains(z[e1 * s1 + v], v)) return;
        t[static_cast<std::size_t>(s)] = v;
        self(self, i + 1);
      });
    };
    rec(rec, 0);
    std::vector<std::span<const Index>> rho_rows(t.size());
    for (Subset s = 1; s < t.size(); ++s) rho_rows[s] = x.action(rho_subset(n, s));
    std::set<std::vector<Index>> image;
    for (Index e = 0; e < x.size(n); ++e) {
      std::vector<Index> u(t.size(), e1);
      for (Subset s = 1; s < t.size(); ++s) u[s] = rho_rows[s][e];
      if (!pn.contains(u)) {
        r.pullback_form = false;
        pb_witness = "element " + x.labels(n)[e] + " of level " + std::to_string(n) +
                     " does not map into the limit";
        break;
      }
      image.insert(std::move(u));
    }
    if (r.pullback_form && (image.size() != x.size(n) || image.size() != pn.size())) {
      r.pullback_form = false;
      pb_witness = "level " + std::to_string(n) + ": " + std::to_string(x.size(n)) +
                   " elements against a limit of " + std::to_string(pn.size());
    }
  }
  if (!r.iso_form) {
    r.witness = iso_witness;
  } else if (!r.pullback_form) {
    r.witness = pb_witness;
  }
  if (!r.iso_form && !r.pullback_form && iso_witness != pb_witness) {
    r.witness = iso_witness + "; " + pb_witness;
  }
  return r;
}

TabulatedModule eilenberg_maclane(const Plasma& a, int N) {
  check_arity(N, "eilenberg_maclane");
  if (!check_properties(a).monoid) {
    throw InvalidInput("eilenberg_maclane: '" + a.name() + "' is not a commutative monoid");
  }
  const std::size_t q = a.size();
  std::vector<std::vector<std::string>> levels;
  std::size_t count = 1;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) count *= q;
    if (count > 1'000'000) throw InvalidInput("eilenberg_maclane: level too large");
    auto& level = levels.emplace_back();
    for (std::size_t code = 0; code < count; ++code) {
      std::string s = "(";
      std::size_t c = code;
      std::vector<std::string> parts(static_cast<std::size_t>(n));
      for (int i = n - 1; i >= 0; --i) {
        parts[static_cast<std::size_t>(i)] = a.label(static_cast<Index>(c % q));
        c /= q;
      }
      for (int i = 0; i < n; ++i) s += (i ? "," : "") + parts[static_cast<std::size_t>(i)];
      level.push_back(s + ")");
    }
  }
  // Element code: base-|A| digits a_1 ... a_n, a_1 most significant.
  return TabulatedModule("HA(" + a.name() + ")", std::move(levels),
                         [&](const PointedMap& phi, Index code) {
                           const int n = phi.source();
                           const int m = phi.target();
                           std::vector<Index> digits(static_cast<std::size_t>(n) + 1, 0);
                           for (int i = n; i >= 1; --i) {
                             digits[static_cast<std::size_t>(i)] = static_cast<Index>(code % q);
                             code /= static_cast<Index>(q);
                           }
                           std::vector<Index> sums(static_cast<std::size_t>(m) + 1, a.unit());
                           for (int i = 1; i <= n; ++i) {
                             auto& acc = sums[phi(static_cast<Index>(i))];
                             acc = add_in_monoid(a, acc, digits[static_cast<std::size_t>(i)]);
                           }
                           Index out = 0;
                           for (int j = 1; j <= m; ++j) out = out * static_cast<Index>(q) + sums[static_cast<std::size_t>(j)];
                           return out;
                         });
}

ModuleMorphism em_projection(const Plasma& a, int N, Budget budget) {
  ModuleMorphism out(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    for (const auto& t : nerve_level(a, n, budget)) {
      Index code = 0;
      for (int i = 0; i < n; ++i) code = code * static_cast<Index>(a.size()) + t[singleton(static_cast<std::size_t>(i))];
      out[static_cast<std::size_t>(n)].push_back(code);
    }
  }
  return out;
}

}  // namespace plasmic
