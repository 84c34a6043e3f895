// Brute-force reference implementations shared by the unit tests and the
// acceptance binary. Nothing here calls into the search code under test; the
// library types are only used as containers for the input tables.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "plasmic/plasma.hpp"

namespace oracle {

using Elems = std::set<int>;
using Table = std::vector<std::vector<Elems>>;

inline Table table_of(const plasmic::Plasma& p) {
  const int n = static_cast<int>(p.size());
  Table t(n, std::vector<Elems>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (p.sum(a, b) >> c & 1) t[a][b].insert(c);
      }
    }
  }
  return t;
}

inline Elems lift(const Table& t, const Elems& as, int b) {
  Elems out;
  for (int a : as) out.insert(t[a][b].begin(), t[a][b].end());
  return out;
}

inline bool associative(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (lift(t, t[a][b], c) != lift(t, t[b][c], a)) return false;
      }
    }
  }
  return true;
}

/// Calls f on every function {0..n-1} → {0..m-1} with f(0) = 0.
template <class F>
void for_each_pointed_function(int n, int m, F&& f) {
  std::vector<int> v(n, 0);
  while (true) {
    f(v);
    int k = n - 1;
    while (k >= 1 && v[k] == m - 1) v[k--] = 0;
    if (k < 1) return;
    ++v[k];
  }
}

inline bool morphism(const Table& p, const Table& q, const std::vector<int>& f) {
  if (f[0] != 0) return false;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < p.size(); ++b) {
      for (int c : p[a][b]) {
        if (!q[f[a]][f[b]].contains(f[c])) return false;
      }
    }
  }
  return true;
}

inline std::vector<std::vector<int>> morphisms(const Table& p, const Table& q) {
  std::vector<std::vector<int>> out;
  for_each_pointed_function(static_cast<int>(p.size()), static_cast<int>(q.size()),
                            [&](const std::vector<int>& f) {
                              if (morphism(p, q, f)) out.push_back(f);
                            });
  return out;
}

/// Level n of the nerve as entry vectors indexed by subset bitmask, sorted.
inline std::vector<std::vector<int>> nerve(const Table& t, int n) {
  const int m = static_cast<int>(t.size());
  const int subsets = 1 << n;
  std::vector<std::vector<int>> out;
  std::vector<int> x(subsets, 0);
  while (true) {
    bool ok = true;
    for (int s = 1; s < subsets && ok; ++s) {
      for (int a = 1; a < s && ok; ++a) {
        if ((a & s) != a) continue;
        ok = t[x[a]][x[s ^ a]].contains(x[s]);
      }
    }
    if (ok) out.push_back(x);
    int k = subsets - 1;
    while (k >= 1 && x[k] == m - 1) x[k--] = 0;
    if (k < 1) break;
    ++x[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// β of an order-preserving [m] → [n] straight from the definition.
inline std::vector<int> beta(const std::vector<int>& phi, int n) {
  std::vector<int> out(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    std::vector<int> k;
    for (int j = 0; j < static_cast<int>(phi.size()); ++j) {
      if (i <= phi[j]) k.push_back(j);
    }
    if (!k.empty() && k.front() != 0) out[i] = k.front();
  }
  return out;
}

/// Symmetric table on {0..n-1} with 0 a weak unit and random hypersums.
inline plasmic::Plasma random_plasma(std::mt19937& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<plasmic::Subset> t(n * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      plasmic::Subset s = 0;
      for (int c = 0; c < n; ++c) {
        if (coin(rng)) s |= plasmic::Subset{1} << c;
      }
      if (a == 0) s |= plasmic::Subset{1} << b;
      t[a * n + b] = t[b * n + a] = s;
    }
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return plasmic::Plasma("random", labels, [&](plasmic::Index a, plasmic::Index b) {
    return t[a * n + b];
  });
}

/// Closure under XOR of a set of vectors of 𝔽₂^k, always containing 0.
inline std::set<int> f2_span(const std::set<int>& gens) {
  std::set<int> span{0};
  for (int g : gens) {
    std::set<int> next = span;
    for (int v : span) next.insert(v ^ g);
    span = next;
  }
  return span;
}

}  // namespace oracle
