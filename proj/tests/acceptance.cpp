// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "plasmic/finstar.hpp"
#include "plasmic/matroid.hpp"
#include "plasmic/module.hpp"
#include "plasmic/nerve.hpp"
#include "plasmic/plasma.hpp"
#include "plasmic/simplicial.hpp"

using namespace plasmic;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

std::vector<std::string> listing(const Plasma& m, int n) {
  std::vector<std::string> out;
  for (const auto& t : nerve_level(m, n)) out.push_back(format_tuple(m, t));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Outcome ac1() {
  Outcome o;
  const Plasma k = krasner();
  const std::size_t expected[] = {1, 2, 5, 19, 137};
  for (int n = 0; n <= 4; ++n) {
    o.require(nerve_level(k, n).size() == expected[n], "|HK_" + std::to_string(n) + "| mismatch");
  }
  const std::vector<std::string> level2{"(0,0,0)", "(1,0,1)", "(0,1,1)", "(1,1,1)", "(1,1,0)"};
  o.require(listing(k, 2) == sorted(level2), "level 2 listing differs");
  const std::vector<std::string> level3{
      "(0,0,0,0,0,0,0)", "(0,0,1,0,1,1,1)", "(0,1,0,1,0,1,1)", "(1,0,0,1,1,0,1)", "(0,1,1,1,1,0,0)",
      "(0,1,1,1,1,1,1)", "(1,0,1,1,0,1,0)", "(1,0,1,1,1,1,1)", "(1,1,0,0,1,1,0)", "(1,1,0,1,1,1,1)",
      "(1,1,1,0,0,0,1)", "(1,1,1,1,0,0,1)", "(1,1,1,0,1,0,1)", "(1,1,1,0,0,1,1)", "(1,1,1,1,1,0,1)",
      "(1,1,1,1,0,1,1)", "(1,1,1,0,1,1,1)", "(1,1,1,1,1,1,0)", "(1,1,1,1,1,1,1)"};
  o.require(listing(k, 3) == sorted(level3), "level 3 listing differs");
  if (o.pass) o.detail = "1 2 5 19 137, listings match";
  return o;
}

Outcome ac2() {
  Outcome o;
  const Plasma k = krasner();
  const auto r = two_segal_check(underlying_simplicial(nerve_module(k, 3)));
  const SegalSquare* sq = nullptr;
  for (const auto& s : r.squares) {
    if (s.n == 2 && s.i == 1 && s.kind == 1) sq = &s;
  }
  o.require(sq != nullptr, "square missing");
  if (!sq) return o;
  o.require(sq->pullback_size == 13, "pullback has " + std::to_string(sq->pullback_size));
  o.require(sq->top_size == 19, "level 3 has " + std::to_string(sq->top_size));
  o.require(!sq->bijective, "comparison map is a bijection");

  // Pairs (a, b) of level-2 tuples with a_2 = b_12, against the expected set.
  std::vector<std::string> pairs;
  const auto level = nerve_level(k, 2);
  for (const auto& a : level) {
    for (const auto& b : level) {
      if (a[2] == b[3]) pairs.push_back("(" + format_tuple(k, a) + "," + format_tuple(k, b) + ")");
    }
  }
  const std::vector<std::string> listed{
      "((0,0,0),(0,0,0))", "((0,0,0),(1,1,0))", "((1,0,1),(0,0,0))", "((1,0,1),(1,1,0))",
      "((0,1,1),(1,0,1))", "((0,1,1),(0,1,1))", "((0,1,1),(1,1,1))", "((1,1,1),(1,0,1))",
      "((1,1,1),(0,1,1))", "((1,1,1),(1,1,1))", "((1,1,0),(1,0,1))", "((1,1,0),(0,1,1))",
      "((1,1,0),(1,1,1))"};
  o.require(sorted(pairs) == sorted(listed), "pullback listing differs");
  if (o.pass) o.detail = "pullback 13, level 3 has 19, not bijective";
  return o;
}

Outcome ac3() {
  Outcome o;
  const std::size_t n = span_pullback_count();
  o.require(n == 13, "span pullback has " + std::to_string(n));
  if (o.pass) o.detail = "13";
  return o;
}

Outcome ac4() {
  Outcome o;
  const int N = 4;
  const auto f1 = f1_module(N);
  const auto h = nerve_module(psi_truncate(f1), N);
  ModuleMorphism iso(N + 1);
  for (int n = 0; n <= N; ++n) {
    const auto level = nerve_level(psi_f1(), n);
    o.require(h.size(n) == static_cast<std::size_t>(n) + 1, "level " + std::to_string(n) + " size");
    for (int k = 0; k <= n; ++k) {
      // k ↦ the tuple that is 1 exactly on the subsets containing k.
      SubsetTuple t{n, std::vector<Index>(std::size_t{1} << n, 0)};
      for (Subset s = 0; s < t.entries.size(); ++s) t.entries[s] = k > 0 && contains(s, k - 1) ? 1 : 0;
      const auto idx = find_tuple(level, t);
      o.require(idx.has_value(), "tuple for " + std::to_string(k) + " missing");
      iso[n].push_back(idx.value_or(0));
    }
  }
  if (o.pass) o.require(is_module_isomorphism(f1, h, iso), "not a natural isomorphism");
  if (o.pass) o.detail = "levels 0..4 natural against all pointed maps";
  return o;
}

Outcome ac5() {
  Outcome o;
  for (const Plasma& m : {krasner(), psi_f1(), power_set(2), cyclic_group(2)}) {
    const auto h = nerve_module(m, 2);
    const auto l1 = nerve_level(m, 1);
    const auto l2 = nerve_level(m, 2);
    o.require(h.size(0) == 1, m.name() + ": level 0 not a singleton");
    o.require(l1.size() == m.size(), m.name() + ": level 1 size");
    for (Index a = 0; a < l1.size(); ++a) {
      o.require(l1[a].entries == std::vector<Index>{0, a}, m.name() + ": level 1 is not M");
    }
    for (Index x = 0; x < l2.size(); ++x) {
      const auto& t = l2[x];
      o.require(h.act(rho(2, 1), x) == t[1], m.name() + ": rho1 is not the first projection");
      o.require(h.act(rho(2, 2), x) == t[2], m.name() + ": rho2 is not the second projection");
      o.require(h.act(alpha(), x) == t[3], m.name() + ": alpha is not the sum coordinate");
      o.require(contains(m.sum(t[1], t[2]), t[3]), m.name() + ": sum coordinate outside the hypersum");
    }
    // Every pair (a, b) and every c ∈ a ⊞ b occurs exactly once.
    std::size_t expected = 0;
    for (Index a = 0; a < m.size(); ++a) {
      for (Index b = 0; b < m.size(); ++b) expected += static_cast<std::size_t>(cardinality(m.sum(a, b)));
    }
    o.require(l2.size() == expected, m.name() + ": level 2 is not the graph of the hypersum");
  }
  if (o.pass) o.detail = "K, F1, P(2), Z/2";
  return o;
}

Outcome ac6() {
  Outcome o;
  for (const auto& x : {f1_module(3), corepresented_module(2, 3)}) {
    for (const Plasma& m : {krasner(), psi_f1(), boolean_monoid()}) {
      const auto r = adjunction_check(x, m);
      const std::string tag = x.name() + " / " + m.name();
      o.require(r.well_defined && r.bijective, tag + ": unit is not a bijection of hom sets");
      o.require(r.counit_identity, tag + ": counit is not the identity");
      o.require(r.triangle_identities, tag + ": triangle identity fails");
    }
  }
  if (o.pass) o.detail = "6 pairs at truncation 3";
  return o;
}

Outcome ac7() {
  Outcome o;
  for (const Plasma& m : {krasner(), psi_f1(), power_set(1), cyclic_group(2)}) {
    for (int n = 0; n <= 3; ++n) {
      const auto r = corepresentability_check(m, n);
      const std::string tag = m.name() + " n=" + std::to_string(n);
      o.require(r.plasma_homs == r.nerve_size, tag + ": counts differ");
      o.require(r.bijective && r.natural, tag + ": not a natural bijection");
      o.require(oracle::morphisms(oracle::table_of(power_set(n)), oracle::table_of(m)).size() == r.plasma_homs,
                tag + ": brute-force hom count differs");
    }
  }
  if (o.pass) o.detail = "n <= 3 for K, F1, P(1), Z/2";
  return o;
}

Outcome ac8() {
  Outcome o;
  for (const Plasma& a : {cyclic_group(2), boolean_monoid()}) {
    const auto h = eilenberg_maclane(a, 4);
    const auto r = segal_check(h);
    o.require(r.iso_form, a.name() + ": iso form fails");
    o.require(r.pullback_form, a.name() + ": pullback form fails");
    o.require(is_module_isomorphism(nerve_module(a, 4), h, em_projection(a, 4)),
              a.name() + ": nerve and HA differ");
  }
  auto bad = eilenberg_maclane(cyclic_group(2), 3);
  // Make ρ₁ forget the first coordinate of (1,1).
  auto& table = bad.mutable_tables()[bad.table_index(2, 1)];
  table[rho(2, 1).rank() * bad.size(2) + 3] = 0;
  const auto r = segal_check(bad);
  o.require(!r.iso_form && !r.pullback_form, "corrupted module passes");
  o.require(!r.witness.empty(), "corrupted module has no witness");
  if (o.pass) o.detail = "HZ/2, HB pass; corrupted module fails: " + r.witness;
  return o;
}

Outcome ac9() {
  Outcome o;
  const Plasma p = power_set(2);
  // Expected rows; 0 is the empty hypersum.
  const std::vector<std::vector<Subset>> matrix = {
      {singleton(0), singleton(1), singleton(2), singleton(3)},
      {singleton(1), 0, singleton(3), 0},
      {singleton(2), singleton(3), 0, 0},
      {singleton(3), 0, 0, 0},
  };
  for (Index a = 0; a < 4; ++a) {
    for (Index b = 0; b < 4; ++b) o.require(p.sum(a, b) == matrix[a][b], "table differs");
  }
  for (int m = 0; m <= 3; ++m) {
    for (int n = 0; n <= 3; ++n) {
      std::size_t expected = 1;
      for (int i = 0; i < n; ++i) expected *= static_cast<std::size_t>(m + 1);
      const auto count = enumerate_morphism_maps(power_set(m), power_set(n)).size();
      o.require(count == expected, "|Plas(P(" + std::to_string(m) + "),P(" + std::to_string(n) +
                                       "))| = " + std::to_string(count));
    }
  }
  const Subset left = p.sum_set(p.sum(1, 2), 3);
  const Subset right = p.sum_set(p.sum(2, 3), 1);
  o.require(left != right, "(1*2)*3 = " + p.format(left) + " equals 1*(2*3) = " + p.format(right) +
                               "; associative = " + (check_properties(p).associative ? "true" : "false"));
  if (o.pass) o.detail = "table, counts and non-associativity";
  return o;
}

Outcome ac10() {
  Outcome o;
  const std::vector<std::pair<DeltaMap, std::vector<Index>>> rows = {
      {DeltaMap::coface(2, 0), {0, 0, 1}},       {DeltaMap::coface(2, 1), {0, 1, 1}},
      {DeltaMap::coface(2, 2), {0, 1, 0}},       {DeltaMap::codegeneracy(1, 0), {0, 2}},
      {DeltaMap::codegeneracy(1, 1), {0, 1}},    {DeltaMap::coface(3, 0), {0, 0, 1, 2}},
      {DeltaMap::coface(3, 1), {0, 1, 1, 2}},    {DeltaMap::coface(3, 2), {0, 1, 2, 2}},
      {DeltaMap::coface(3, 3), {0, 1, 2, 0}},    {DeltaMap::codegeneracy(2, 0), {0, 2, 3}},
      {DeltaMap::codegeneracy(2, 1), {0, 1, 3}}, {DeltaMap::codegeneracy(2, 2), {0, 1, 2}},
  };
  for (const auto& [d, image] : rows) {
    o.require(beta(d).image() == image, "table row " + beta(d).to_string());
  }
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto b = beta(DeltaMap::coface(n, k));
      o.require(b == beta_face(n, k), "face closed form n=" + std::to_string(n));
      const std::vector<int> phi = DeltaMap::coface(n, k).values();
      o.require(std::vector<int>(b.image().begin(), b.image().end()) == oracle::beta(phi, n),
                "beta definition n=" + std::to_string(n));
    }
    for (int k = 0; k < n; ++k) {
      o.require(beta(DeltaMap::codegeneracy(n - 1, k)) == beta_degen(n, k),
                "degeneracy closed form n=" + std::to_string(n));
    }
  }
  for (const auto& x : {f1_module(4), corepresented_module(2, 4), nerve_module(krasner(), 4),
                        nerve_module(psi_f1(), 4), eilenberg_maclane(cyclic_group(2), 4)}) {
    const auto r = check_simplicial_identities(underlying_simplicial(x));
    o.require(r.ok, x.name() + ": " + r.witness);
  }
  if (o.pass) o.detail = "12 table rows, closed forms n <= 5, identities at N = 4";
  return o;
}

Outcome ac11() {
  Outcome o;
  for (const Plasma& m : {psi_f1(), cyclic_group(2)}) {
    const auto hm = underlying_simplicial(nerve_module(m, 4));
    const auto bm = partial_monoid_classifying(m, 4);
    const auto r = check_simplicial_isomorphism(hm, bm, nerve_to_classifying(m, 4));
    o.require(r.ok, m.name() + ": " + r.witness);
    o.require(two_segal_check(hm).ok, m.name() + ": nerve is not 2-Segal");
    o.require(two_segal_check(bm).ok, m.name() + ": BM is not 2-Segal");
  }
  if (o.pass) o.detail = "F1, Z/2 at N = 4";
  return o;
}

Outcome ac12() {
  Outcome o;
  const auto fano = pg_f2(3);
  o.require(fano.size() == 8, "ground set size");
  const auto c = classify_matroid(fano);
  o.require(c.matroid && c.simple_pointed && c.projective, "classification: " + c.witness);
  const Plasma p = pi_plasma(fano);
  const auto props = check_properties(p);
  o.require(props.commutative && props.mosaic, "Pi(PG) is not a commutative mosaic");
  for (Index x = 1; x < 8; ++x) {
    for (Index y = 1; y < 8; ++y) {
      if (x != y) o.require(p.sum(x, y) == singleton(x ^ y), "x+y is not {x xor y}");
    }
  }
  const auto e = embedding_check(pg_f2(2), pg_f2(2));
  o.require(e.faithful && e.full, "embedding on PG(F2,2) is not fully faithful");
  if (o.pass) {
    o.detail = "Fano projective, Pi mosaic, " + std::to_string(e.matroid_homs) + " = " +
               std::to_string(e.plasma_homs) + " homs";
  }
  return o;
}

Outcome ac13() {
  Outcome o;
  const auto g2 = gl_n(2, 3);
  const auto g3 = gl_n(3, 3);
  o.require(g2.elements.size() == 2, "|GL_2| = " + std::to_string(g2.elements.size()));
  o.require(g3.elements.size() == 6, "|GL_3| = " + std::to_string(g3.elements.size()));
  o.require(g2.group_axioms && g3.group_axioms, "group axioms");
  o.require(g2.equals_summand_permutations && g3.equals_summand_permutations,
            "not generated by summand permutations");
  if (o.pass) o.detail = "orders 2 and 6";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_ms;
    std::function<Outcome()> run;
  };
  constexpr double kNone = 0;
  const std::vector<Criterion> criteria = {
      {1, "Krasner nerve counts and listings", 1000, ac1},
      {2, "2-Segal counterexample", 1000, ac2},
      {3, "span pullback count", kNone, ac3},
      {4, "nerve of Psi F1 is F1", kNone, ac4},
      {5, "low levels of the nerve", kNone, ac5},
      {6, "adjunction", 30000, ac6},
      {7, "corepresentability", kNone, ac7},
      {8, "Segal condition", kNone, ac8},
      {9, "power-set plasma", kNone, ac9},
      {10, "beta tables and simplicial identities", kNone, ac10},
      {11, "partial monoids", kNone, ac11},
      {12, "matroids", 60000, ac12},
      {13, "GL", 60000, ac13},
  };
  int passed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_ms > 0 && ms > c.limit_ms) {
      o.detail = "took " + std::to_string(ms) + " ms; " + o.detail;
      o.pass = false;
    }
    passed += o.pass;
    std::printf("AC%-2d %s  %s: %s (%.1f ms)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), ms);
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
