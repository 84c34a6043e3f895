#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plasmic/finstar.hpp"
#include "plasmic/plasma.hpp"

using namespace plasmic;

namespace {

Subset set_of(const Plasma& p, std::initializer_list<const char*> labels) {
  Subset s = 0;
  for (const char* l : labels) s |= singleton(*p.find(l));
  return s;
}

std::vector<std::vector<int>> as_int(const std::vector<ElementMap>& maps) {
  std::vector<std::vector<int>> out;
  for (const auto& m : maps) out.emplace_back(m.begin(), m.end());
  return out;
}

}  // namespace

TEST_SUITE("plasma") {
  TEST_CASE("constructor rejects asymmetric tables and missing units") {
    const std::vector<std::string> l{"0", "1"};
    const auto asymmetric = [](Index a, Index b) -> Subset {
      if (a == 0 || b == 0) return singleton(a | b);
      return a < b ? 1u : 2u;
    };
    CHECK_THROWS_AS(Plasma("bad", {"0", "1", "2"}, asymmetric), InvalidInput);
    CHECK_THROWS_AS(Plasma("bad", l, [](Index, Index) -> Subset { return 0; }), InvalidInput);
    CHECK_THROWS_AS(Plasma("bad", {"0", "0"}, [](Index a, Index b) -> Subset { return singleton(a | b); }),
                    InvalidInput);
  }

  TEST_CASE("krasner properties") {
    const Plasma k = krasner();
    CHECK(k.sum(1, 1) == 0b11u);
    const auto r = check_properties(k);
    CHECK(r.commutative);
    CHECK(r.weakly_unital);
    CHECK(r.total);
    CHECK_FALSE(r.deterministic);
    CHECK(r.associative);
    CHECK(r.strictly_unital);
    CHECK(r.reversible);
    CHECK(r.mosaic);
    CHECK_FALSE(r.monoid);
    REQUIRE(r.inverse.has_value());
    CHECK(*r.inverse == ElementMap{0, 1});
    CHECK(r.inverse_count == 1);
    CHECK(r.deterministic_witness->text == "1⊞1 = {0,1}");
  }

  TEST_CASE("psi_f1 is a deterministic partial monoid without inverses") {
    const auto r = check_properties(psi_f1());
    CHECK(r.deterministic);
    CHECK_FALSE(r.total);
    CHECK(r.associative);
    CHECK(r.strictly_unital);
    CHECK_FALSE(r.reversible);
    CHECK(r.inverse_count == 0);
  }

  TEST_CASE("cyclic groups are mosaics and monoids with negation as inverse") {
    for (int n = 1; n <= 6; ++n) {
      const auto r = check_properties(cyclic_group(n));
      CHECK(r.monoid);
      CHECK(r.mosaic);
      REQUIRE(r.inverse.has_value());
      for (int a = 0; a < n; ++a) CHECK((*r.inverse)[a] == static_cast<Index>((n - a) % n));
      CHECK(r.inverse_count == 1);
    }
  }

  TEST_CASE("boolean monoid") {
    const auto r = check_properties(boolean_monoid());
    CHECK(r.monoid);
    CHECK_FALSE(r.reversible);
  }

  TEST_CASE("power_set(2) matches the addition matrix and is associative as a partial magma") {
    const Plasma p = power_set(2);
    const std::vector<std::vector<Subset>> expected = {
        {1u << 0, 1u << 1, 1u << 2, 1u << 3},
        {1u << 1, 0, 1u << 3, 0},
        {1u << 2, 1u << 3, 0, 0},
        {1u << 3, 0, 0, 0},
    };
    for (Index a = 0; a < 4; ++a) {
      for (Index b = 0; b < 4; ++b) CHECK(p.sum(a, b) == expected[a][b]);
    }
    const auto r = check_properties(p);
    CHECK(r.associative);
    CHECK(r.deterministic);
    CHECK_FALSE(r.total);
    CHECK(r.total_witness->text == "{1}⊞{1} = {}");
    CHECK(oracle::associative(oracle::table_of(p)));
  }

  TEST_CASE("morphism counts") {
    CHECK(enumerate_morphism_maps(psi_f1(), krasner()).size() == 2);
    CHECK(enumerate_morphism_maps(power_set(2), power_set(1)).size() == 3);
    CHECK(enumerate_morphism_maps(krasner(), krasner()).size() == 2);
    CHECK(enumerate_morphism_maps(cyclic_group(2), krasner()).size() == 2);
    CHECK(enumerate_morphism_maps(cyclic_group(3), cyclic_group(2)).size() == 1);
  }

  TEST_CASE("power set morphisms are preimage maps") {
    for (int m = 0; m <= 3; ++m) {
      for (int n = 0; n <= 3; ++n) {
        const auto maps = enumerate_morphism_maps(power_set(m), power_set(n));
        std::set<ElementMap> found(maps.begin(), maps.end());
        std::set<ElementMap> expected;
        for (const auto& phi : enumerate_pointed_maps(n, m)) {
          ElementMap f(std::size_t{1} << m);
          for (Subset x = 0; x < f.size(); ++x) f[x] = static_cast<Index>(preimage(phi, x));
          expected.insert(f);
        }
        CHECK(found == expected);
      }
    }
  }

  TEST_CASE("PlasmaMorphism validation and composition") {
    auto f1 = std::make_shared<const Plasma>(psi_f1());
    auto k = std::make_shared<const Plasma>(krasner());
    auto z2 = std::make_shared<const Plasma>(cyclic_group(2));
    CHECK_THROWS_AS(PlasmaMorphism(k, f1, {0, 1}), InvalidInput);
    const PlasmaMorphism f(f1, z2, {0, 1});
    const PlasmaMorphism g(z2, k, {0, 1});
    const PlasmaMorphism h = compose(g, f);
    CHECK(h.map() == ElementMap{0, 1});
    CHECK(compose(PlasmaMorphism::identity(k), g) == g);
    CHECK(is_isomorphism(*k, *k, std::vector<Index>{0, 1}));
    CHECK_FALSE(is_isomorphism(*f1, *z2, std::vector<Index>{0, 1}));
  }

  TEST_CASE("maps into linear trees") {
    const auto k = classify_maps_to_linear_tree(krasner(), 1);
    REQUIRE(k.partitions.size() == 1);
    CHECK(k.partitions[0] == OrderedPartition{0b11, 0});
    CHECK(k.conditions_hold);
    CHECK(k.bijective);
    const auto f = classify_maps_to_linear_tree(psi_f1(), 2);
    CHECK(f.partitions.size() == 3);
    CHECK(f.bijective);
  }

  TEST_CASE("structured builders") {
    const Plasma t = linear_tree(2);
    CHECK(t.sum(0, 2) == 0b111u);
    CHECK(t.sum(1, 1) == 0b010u);
    const Plasma chain = poset_plasma("chain", {"b", "e", "a"}, {{"e", "a"}, {"a", "b"}}, "e");
    CHECK(chain.label(0) == "e");
    CHECK(chain.sum(*chain.find("a"), *chain.find("b")) == set_of(chain, {"a", "b"}));
    CHECK(chain.sum(0, *chain.find("b")) == set_of(chain, {"e", "a", "b"}));
    const auto order = recovered_order(chain);
    CHECK(order[*chain.find("b")] == set_of(chain, {"e", "a", "b"}));
    const Plasma star = tree_plasma("star", {"r", "a", "b"}, {{"r", "a"}, {"r", "b"}}, "r");
    CHECK(star.sum(*star.find("a"), *star.find("b")) == set_of(star, {"r", "a", "b"}));
    const Plasma mon = monoid_plasma("z2", {"0", "1"}, {{"0", "1"}, {"1", "0"}});
    CHECK(mon == cyclic_group(2));
  }

  TEST_CASE("poset plasma rejects a non-least unit") {
    CHECK_THROWS_AS(poset_plasma("p", {"a", "b"}, {}, "a"), InvalidInput);
  }

  TEST_CASE("descriptors and JSON") {
    CHECK(build_plasma("power_set(2)") == power_set(2));
    CHECK(build_plasma("power_set:2") == power_set(2));
    CHECK(build_plasma("cyclic(3)") == cyclic_group(3));
    CHECK_THROWS_AS(build_plasma("nonsense"), InvalidInput);
    for (const Plasma& p : {krasner(), psi_f1(), power_set(2), linear_tree(3), cyclic_group(4)}) {
      CHECK(plasma_from_json(plasma_to_json(p)) == p);
    }
    const auto j = nlohmann::json::parse(R"({"name":"k","elements":["0","1"],"unit":"0",
        "sum":{"0,0":["0"],"0,1":["1"],"1,1":["0","1"]}})");
    CHECK(plasma_from_json(j) == krasner());
    const auto missing = nlohmann::json::parse(R"({"name":"k","elements":["0","1"],"unit":"0","sum":{}})");
    CHECK_THROWS_AS(plasma_from_json(missing), InvalidInput);
    const auto builder = nlohmann::json::parse(R"({"builder":"power_set","n":2})");
    CHECK(plasma_from_json(builder) == power_set(2));
  }

  TEST_CASE("budget is enforced") {
    CHECK_THROWS_AS(enumerate_morphism_maps(power_set(3), power_set(3), Budget{5}), BudgetExceeded);
  }

  TEST_CASE("random plasmas against brute force") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + trial % 3;
      const Plasma p = oracle::random_plasma(rng, n, 0.35);
      const Plasma q = oracle::random_plasma(rng, 2 + (trial / 3) % 3, 0.5);
      const auto tp = oracle::table_of(p);
      const auto tq = oracle::table_of(q);
      CHECK(check_properties(p).associative == oracle::associative(tp));
      CHECK(as_int(enumerate_morphism_maps(p, q)) == oracle::morphisms(tp, tq));

      // Inverse functions, over all (not necessarily pointed) functions.
      std::vector<ElementMap> inv;
      std::vector<Index> f(n, 0);
      while (true) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
          for (int b = 0; b < n && ok; ++b) {
            for (int c = 0; c < n && ok; ++c) {
              if (!tp[b][c].contains(a)) continue;
              ok = tp[a][f[c]].contains(b) && tp[f[b]][a].contains(c);
            }
          }
        }
        if (ok) inv.push_back(f);
        int k = n - 1;
        while (k >= 0 && f[k] == static_cast<Index>(n - 1)) f[k--] = 0;
        if (k < 0) break;
        ++f[k];
      }
      CHECK(enumerate_inverse_functions(p) == inv);
      CHECK(check_properties(p).inverse_count == inv.size());

      const auto cls = classify_maps_to_linear_tree(p, 2);
      CHECK(cls.partitions.size() == oracle::morphisms(tp, oracle::table_of(linear_tree(2))).size());
      CHECK(cls.bijective);
    }
  }
}
