#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "plasmic/nerve.hpp"

using namespace plasmic;

namespace {

std::vector<std::vector<int>> entries_of(const std::vector<SubsetTuple>& level) {
  std::vector<std::vector<int>> out;
  for (const auto& t : level) out.emplace_back(t.entries.begin(), t.entries.end());
  return out;
}

// X_n = basepoint plus pairs (i, j) of nonzero elements, acted on diagonally
// and collapsed when either coordinate dies. Functorial but not Segal.
TabulatedModule smash_square(int N) {
  std::vector<std::vector<std::string>> levels;
  for (int n = 0; n <= N; ++n) {
    auto& level = levels.emplace_back(1, "*");
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) level.push_back(std::to_string(i) + std::to_string(j));
    }
  }
  return TabulatedModule("smash", levels, [](const PointedMap& phi, Index x) -> Index {
    if (x == 0) return 0;
    const Index n = static_cast<Index>(phi.source());
    const Index i = phi(1 + (x - 1) / n), j = phi(1 + (x - 1) % n);
    if (i == 0 || j == 0) return 0;
    return 1 + (i - 1) * static_cast<Index>(phi.target()) + (j - 1);
  });
}

}  // namespace

TEST_SUITE("nerve") {
  TEST_CASE("Krasner nerve sizes against brute force") {
    const std::size_t expected[] = {1, 2, 5, 19, 137};
    const auto table = oracle::table_of(krasner());
    for (int n = 0; n <= 4; ++n) {
      const auto level = nerve_level(krasner(), n);
      CHECK(level.size() == expected[n]);
      CHECK(entries_of(level) == oracle::nerve(table, n));
    }
  }

  TEST_CASE("Krasner level 2 listing") {
    std::vector<std::string> got;
    for (const auto& t : nerve_level(krasner(), 2)) got.push_back(format_tuple(krasner(), t));
    CHECK(got == std::vector<std::string>{"(0,0,0)", "(0,1,1)", "(1,0,1)", "(1,1,0)", "(1,1,1)"});
  }

  TEST_CASE("other nerves") {
    for (int n = 0; n <= 5; ++n) {
      CHECK(nerve_level(psi_f1(), n).size() == static_cast<std::size_t>(n) + 1);
      CHECK(nerve_level(cyclic_group(2), n).size() == std::size_t{1} << n);
    }
    CHECK(nerve_level(power_set(1), 2).size() == 3);
    std::vector<std::string> f1;
    for (const auto& t : nerve_level(psi_f1(), 3)) f1.push_back(format_tuple(psi_f1(), t));
    CHECK(f1 == std::vector<std::string>{"(0,0,0,0,0,0,0)", "(0,0,1,0,1,1,1)", "(0,1,0,1,0,1,1)",
                                         "(1,0,0,1,1,0,1)"});
  }

  TEST_CASE("tuple membership and lookup") {
    const auto level = nerve_level(krasner(), 2);
    for (const auto& t : level) {
      CHECK(is_nerve_tuple(krasner(), t));
      CHECK(find_tuple(level, t).has_value());
    }
    const SubsetTuple bad{2, {0, 1, 0, 0}};
    CHECK_FALSE(is_nerve_tuple(krasner(), bad));
    CHECK_FALSE(find_tuple(level, bad).has_value());
  }

  TEST_CASE("projections and addition on level 2") {
    for (const Plasma& m : {krasner(), psi_f1(), power_set(2), cyclic_group(2)}) {
      for (const auto& t : nerve_level(m, 2)) {
        CHECK(nerve_act(rho(2, 1), t).entries == std::vector<Index>{0, t[1]});
        CHECK(nerve_act(rho(2, 2), t).entries == std::vector<Index>{0, t[2]});
        CHECK(nerve_act(alpha(), t).entries == std::vector<Index>{0, t[3]});
        CHECK(contains(m.sum(t[1], t[2]), t[3]));
        CHECK(nerve_act(tau(), t).entries == std::vector<Index>{0, t[2], t[1], t[3]});
      }
    }
  }

  TEST_CASE("nerve modules are functorial") {
    for (const Plasma& m : {krasner(), psi_f1(), power_set(2), cyclic_group(3), boolean_monoid()}) {
      CHECK(check_functoriality(nerve_module(m, 3)).ok);
    }
  }

  TEST_CASE("nerve of a morphism") {
    auto f1 = std::make_shared<const Plasma>(psi_f1());
    auto k = std::make_shared<const Plasma>(krasner());
    const PlasmaMorphism f(f1, k, {0, 1});
    const auto h = nerve_of_morphism(f, 3);
    CHECK(is_natural(nerve_module(*f1, 3), nerve_module(*k, 3), h));
    REQUIRE(h[2].size() == 3);
    CHECK(std::set<Index>(h[2].begin(), h[2].end()).size() == 3);
  }

  TEST_CASE("hom sets into nerves") {
    const auto hk = nerve_module(krasner(), 3);
    CHECK(enumerate_module_morphisms(f1_module(3), hk).size() == 2);
    CHECK(enumerate_module_morphisms(hk, hk).size() == enumerate_morphism_maps(krasner(), krasner()).size());
  }

  TEST_CASE("adjunction") {
    for (const auto& x : {f1_module(3), corepresented_module(2, 3)}) {
      for (const Plasma& m : {krasner(), psi_f1(), boolean_monoid(), cyclic_group(2)}) {
        const auto r = adjunction_check(x, m);
        CHECK(r.ok());
        CHECK(r.plasma_homs == r.module_homs);
      }
    }
    CHECK(adjunction_check(corepresented_module(2, 3), psi_f1()).plasma_homs == 3);
  }

  TEST_CASE("counit and unit") {
    CHECK(counit(krasner()) == ElementMap{0, 1});
    const auto u = unit_component(f1_module(3));
    CHECK(u.defined);
    CHECK(is_module_isomorphism(f1_module(3), nerve_module(psi_f1(), 3), u.map));
  }

  TEST_CASE("corepresentability") {
    for (const Plasma& m : {krasner(), psi_f1(), power_set(1), cyclic_group(2), power_set(2)}) {
      for (int n = 0; n <= 3; ++n) {
        const auto r = corepresentability_check(m, n);
        CHECK(r.ok());
        CHECK(r.plasma_homs == r.nerve_size);
      }
    }
    CHECK(corepresentability_check(krasner(), 2).nerve_size == 5);
    CHECK(corepresentability_check(power_set(1), 2).plasma_homs == 3);
  }

  TEST_CASE("Segal condition") {
    for (const Plasma& m : {krasner(), psi_f1(), power_set(2)}) {
      const auto r = segal_check(nerve_module(m, 3));
      CHECK(r.iso_form);
      CHECK(r.pullback_form);
    }
    for (const auto& x : {f1_module(3), corepresented_module(2, 3)}) {
      const auto r = segal_check(x);
      CHECK(r.iso_form);
      CHECK(r.agree());
    }
    const auto s = smash_square(3);
    REQUIRE(check_functoriality(s).ok);
    const auto r = segal_check(s);
    CHECK_FALSE(r.iso_form);
    CHECK_FALSE(r.pullback_form);
    CHECK_FALSE(r.witness.empty());
  }

  TEST_CASE("Eilenberg-MacLane modules") {
    for (const Plasma& a : {cyclic_group(2), cyclic_group(3), boolean_monoid()}) {
      const auto h = eilenberg_maclane(a, 3);
      for (int n = 0; n <= 3; ++n) {
        std::size_t expected = 1;
        for (int i = 0; i < n; ++i) expected *= a.size();
        CHECK(h.size(n) == expected);
      }
      CHECK(check_functoriality(h).ok);
      CHECK(is_module_isomorphism(nerve_module(a, 3), h, em_projection(a, 3)));
      const auto r = segal_check(h);
      CHECK(r.iso_form);
      CHECK(r.pullback_form);
    }
    CHECK(eilenberg_maclane(cyclic_group(3), 2).labels(2)[5] == "(1,2)");
    CHECK_THROWS_AS(eilenberg_maclane(krasner(), 2), InvalidInput);
  }

  TEST_CASE("random plasmas: nerve, functoriality, adjunction, corepresentability") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 40; ++trial) {
      const Plasma m = oracle::random_plasma(rng, 2 + trial % 2, 0.4);
      const auto table = oracle::table_of(m);
      for (int n = 0; n <= 3; ++n) CHECK(entries_of(nerve_level(m, n)) == oracle::nerve(table, n));
      CHECK(check_functoriality(nerve_module(m, 3)).ok);
      CHECK(adjunction_check(f1_module(3), m).ok());
      CHECK(corepresentability_check(m, 2).ok());
      const auto r = segal_check(nerve_module(m, 3));
      CHECK(r.iso_form);
      CHECK(r.pullback_form);
    }
  }

  TEST_CASE("budget") {
    CHECK_THROWS_AS(nerve_level(krasner(), 5, Budget{100}), BudgetExceeded);
  }
}
